#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/linearizer.hpp"
#include "poislin/poisson_file.hpp"
#include "poislin/ranklocus.hpp"

namespace poislin::cli {

namespace {

unsigned checked_degree(std::optional<unsigned> requested, unsigned fallback) {
    const unsigned n = requested.value_or(fallback);
    if (n < 1) throw PreconditionError("--degree must be at least 1");
    const unsigned cap = max_degree_cap();
    if (n > cap)
        throw PreconditionError("--degree " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                                " (raise POIS_MAX_DEGREE to allow it)");
    return n;
}

std::size_t infer_rank(std::size_t dim) {
    for (std::size_t n = 1; n * n + n <= dim; ++n)
        if (n * n + n == dim) return n;
    throw DimensionError("dimension " + std::to_string(dim) + " is not n^2 + n for any n; pass --n");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw PreconditionError("cannot write '" + path + "'");
    f << text;
    if (!f) throw PreconditionError("write to '" + path + "' failed");
}

std::vector<Rational> parse_point(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int check_jacobi(const std::string& file, std::optional<unsigned> degree, std::ostream& out) {
    const PolyVector pi = read_poisson_file(file);
    unsigned top;
    PolyVector jac(pi.coords(), 3);
    if (degree) {
        top = checked_degree(degree, kDefaultDegree);
        jac = schouten(pi, pi, top);
    } else {
        jac = schouten(pi, pi);
        top = static_cast<unsigned>(std::max(1, 2 * std::max(pi.degree(), 1) - 1));
    }
    std::vector<std::size_t> terms(top + 1);
    std::size_t total = 0;
    for (const auto& [blade, coef] : jac.components())
        for (const auto& t : coef.terms()) {
            ++terms[t.mono.degree()];
            ++total;
        }
    for (unsigned k = 0; k <= top; ++k) out << "degree " << k << " : residual " << terms[k] << "\n";
    if (total == 0) {
        out << "Jacobi residual: 0 (exact)\n";
        return kOk;
    }
    out << "Jacobi residual: " << total << " nonzero terms\n";
    return kVerificationFailed;
}

int do_linearize(const std::string& file, std::optional<std::size_t> rank, std::optional<unsigned> degree,
                 const std::string& out_path, std::ostream& out) {
    const PolyVector pi = read_poisson_file(file);
    const std::size_t n = rank ? *rank : infer_rank(pi.coords()->size());
    const unsigned N = checked_degree(degree, kDefaultDegree);
    const LinearizationResult res = linearize(pi, n, N);
    const std::string diffeo = "# coordinate change, exact mod degree " + std::to_string(N) + "\n" + res.psi.to_string();
    if (out_path.empty())
        out << diffeo;
    else
        write_text(out_path, diffeo);
    out << res.report();
    out << (res.verified() ? "PASS" : "FAIL") << " pushforward is linear mod degree " << N << "\n";
    return res.verified() ? kOk : kVerificationFailed;
}

int do_linear(const std::string& id, const std::string& out_path, std::ostream& out) {
    const std::string text = serialize_poisson_file(standard_linear_poisson(LieAlgebraSpec::make(AlgebraId::parse(id))));
    if (out_path.empty())
        out << text;
    else
        write_text(out_path, text);
    return kOk;
}

int do_counterexample(const std::string& id, std::ostream& out) {
    const AlgebraId parsed = AlgebraId::parse(id);
    const CounterexampleReport r = verify_counterexample(parsed.kind);
    out << r.to_string();
    return r.passed() ? kOk : kVerificationFailed;
}

int do_rank(const std::string& file, const std::string& point, std::ostream& out) {
    const PolyVector pi = read_poisson_file(file);
    out << "rank: " << rank_at_point(pi, parse_point(point)) << "\n";
    return kOk;
}

}  // namespace

unsigned max_degree_cap() {
    const char* env = std::getenv("POIS_MAX_DEGREE");
    if (!env || !*env) return 12;
    const std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
        throw PreconditionError("POIS_MAX_DEGREE must be a positive integer, got '" + s + "'");
    const unsigned v = static_cast<unsigned>(std::stoul(s));
    if (v == 0) throw PreconditionError("POIS_MAX_DEGREE must be a positive integer, got '" + s + "'");
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact formal linearization of Poisson structures with aff(n) linear part"};
    app.name("poislin");
    app.require_subcommand(1);

    std::string file, out_path, id, point;
    std::optional<unsigned> degree;
    std::optional<std::size_t> rank;

    auto* jac = app.add_subcommand("check-jacobi", "Exact Schouten residual [Pi,Pi] by degree");
    jac->add_option("file", file, "structure file")->required();
    jac->add_option("--degree", degree, "truncation degree");

    auto* lin = app.add_subcommand("linearize", "Compute and verify a linearizing coordinate change");
    lin->add_option("file", file, "structure file")->required();
    lin->add_option("--n", rank, "rank n of aff(n); inferred from the dimension when omitted");
    lin->add_option("--degree", degree, "truncation degree (default 6)");
    lin->add_option("--out", out_path, "write the coordinate change here");

    auto* linear = app.add_subcommand("linear", "Emit the linear structure of a Lie algebra");
    linear->add_option("algebra", id, "gl:<n>, sl:<n>, aff:<n>, saff2 or e3")->required();
    linear->add_option("--out", out_path, "output file");

    auto* counter = app.add_subcommand("counterexample", "Verify the saff2 or e3 degeneracy example");
    counter->add_option("id", id, "saff2 or e3")->required()->check(CLI::IsMember({"saff2", "e3"}));

    auto* rk = app.add_subcommand("rank", "Rank of the structure matrix at a point");
    rk->add_option("file", file, "structure file")->required();
    rk->add_option("--point", point, "comma-separated rationals")->required();

    std::vector<std::string> argv_store{"poislin"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (jac->parsed()) return check_jacobi(file, degree, out);
        if (lin->parsed()) return do_linearize(file, rank, degree, out_path, out);
        if (linear->parsed()) return do_linear(id, out_path, out);
        if (counter->parsed()) return do_counterexample(id, out);
        if (rk->parsed()) return do_rank(file, point, out);
    } catch (const TailSpanError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const InternalError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace poislin::cli
