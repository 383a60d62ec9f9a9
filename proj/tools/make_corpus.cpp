// Regenerates the structure files under data/.
//
//   poislin_make_corpus <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "poislin/diffeo.hpp"
#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/linearizer.hpp"
#include "poislin/poisson_file.hpp"
#include "poislin/ranklocus.hpp"

using namespace poislin;
namespace fs = std::filesystem;

namespace {

// Large enough that the tame pushforwards below are exact polynomials.
constexpr unsigned kExact = 24;

void write(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
    if (!f) throw PreconditionError("cannot write " + path.string());
}

// x_i -> x_i + g for one coordinate, g free of x_i. Exact inverse x_i -> x_i - g.
struct Elementary {
    std::size_t index;
    const char* shift;
};

FormalDiffeo elementary(const Coords& c, const Elementary& e, int sign) {
    std::vector<Polynomial> imgs;
    for (std::size_t i = 0; i < c->size(); ++i) imgs.push_back(Polynomial::variable(c, i));
    const Polynomial g = parse_polynomial(e.shift, c);
    if (!g.partial(e.index).is_zero()) throw PreconditionError("elementary shift depends on its own coordinate");
    imgs[e.index] += sign > 0 ? g : -g;
    return FormalDiffeo(std::move(imgs), kExact);
}

// Pushes Pi^(1) of aff(2) forward along e_k o ... o e_1 and records the
// exact polynomial inverse as the known linearizing map.
void tame_example(const fs::path& dir, const std::string& stem, const std::vector<Elementary>& steps) {
    const Coords c = aff_coords(2);
    const PolyVector linear = aff_linear_poisson(c, 2);
    FormalDiffeo fwd = FormalDiffeo::identity(c, kExact), back = FormalDiffeo::identity(c, kExact);
    for (const auto& e : steps) {
        fwd = compose(elementary(c, e, +1), fwd);
        back = compose(back, elementary(c, e, -1));
    }
    const PolyVector pi = pushforward(fwd, back, linear, kExact);
    if (pi.degree() >= static_cast<int>(kExact)) throw InternalError(stem + ": pushforward is not exact");
    if (!(pushforward(back, fwd, pi, kExact) == linear)) throw InternalError(stem + ": answer does not linearize");

    std::string header = "# aff(2) linear structure moved by a polynomial automorphism; see " + stem + ".answer\n";
    write(dir / (stem + ".pois"), header + serialize_poisson_file(pi));
    write(dir / (stem + ".answer"),
          "# exact polynomial map carrying " + stem + ".pois back to the linear structure\n" + back.to_string());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: poislin_make_corpus <output-dir>\n";
        return 2;
    }
    const fs::path dir(argv[1]);
    try {
        fs::create_directories(dir);
        for (std::size_t n = 1; n <= 3; ++n)
            write(dir / ("aff" + std::to_string(n) + ".pois"),
                  "# linear structure of aff(" + std::to_string(n) + ")\n" +
                      serialize_poisson_file(standard_linear_poisson(LieAlgebraSpec::make({AlgebraKind::aff, n}))));

        write(dir / "saff2.pois", "# saff(2): linear part plus (h^2+4ef) dy1^dy2\n" +
                                      serialize_poisson_file(counterexample_structure(AlgebraKind::saff2)));
        write(dir / "e3.pois", "# e(3): linear part plus (x1^2+x2^2+x3^2)(x1 dy2^dy3 + x2 dy3^dy1 + x3 dy1^dy2)\n" +
                                   serialize_poisson_file(counterexample_structure(AlgebraKind::e3)));

        const Coords c = aff_coords(2);
        const auto X = casimir_vector_fields(c, 2);
        const auto F = gl_casimirs(c, 2).funcs;
        const PolyVector perturbed = aff_linear_poisson(c, 2) + scale(F[0], wedge(X[0], X[1]));
        write(dir / "aff2_perturbed.pois",
              "# aff(2) linear part plus F1 X1^X2, F1 = x11 + x22; see aff2_perturbed.answer\n" +
                  serialize_poisson_file(perturbed));
        TailDecomposition phi(2, kDefaultDegree);
        phi.set(0, 1, parse_polynomial("z1", phi.z()));
        write(dir / "aff2_perturbed.answer", "# tail decomposition in the Casimirs z1 = F1, z2 = F2\n" + phi.to_string());

        tame_example(dir, "aff2_tame1", {{0, "y1*y2"}, {5, "x12^2"}});
        tame_example(dir, "aff2_tame2", {{4, "x21*x11"}, {1, "y1^2 - x22*y2"}, {3, "x12*y2"}});
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
