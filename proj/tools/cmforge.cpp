#include <cmforge/cache.hpp>
#include <cmforge/classpoly.hpp>
#include <cmforge/cmverify.hpp>
#include <cmforge/modforms.hpp>
#include <cmforge/quadratic.hpp>
#include <cmforge/report.hpp>
#include <cmforge/transform.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace {

using namespace cmforge;

enum Exit { kPass = 0, kFail = 1, kBadParams = 2, kRecognition = 3 };

// Parameter problems the user can fix by choosing other inputs.
bool is_parameter_error(const std::exception& e)
{
    return dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const InvalidDiscriminant*>(&e)
        || dynamic_cast<const UnsupportedLevel*>(&e) || dynamic_cast<const SquareLevel*>(&e)
        || dynamic_cast<const ConductorDivisor*>(&e) || dynamic_cast<const NoSquareRoot*>(&e)
        || dynamic_cast<const NonSquarefree*>(&e) || dynamic_cast<const BudgetTooSmall*>(&e)
        || dynamic_cast<const ClassNumberNotOne*>(&e);
}

struct CacheFlags {
    std::string dir;
    bool disabled = false;
    bool force = false;

    std::optional<cache::Cache> open() const
    {
        if (disabled)
            return std::nullopt;
        return cache::Cache(dir.empty() ? cache::Cache::default_directory() : std::filesystem::path(dir));
    }
};

void add_cache_flags(CLI::App* cmd, CacheFlags& f)
{
    cmd->add_option("--cache-dir", f.dir, "Cache directory (default $CMFORGE_CACHE)");
    cmd->add_flag("--no-cache", f.disabled, "Neither read nor write the cache");
    cmd->add_flag("--force", f.force, "Replace cache entries written by another version");
}

std::string json_int_array(const std::vector<Integer>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].get_str();
    return s + "]";
}

struct ClasspolyArgs {
    long D = 0;
    long prec_bits = 0;
    bool json = false;
    CacheFlags cache;
};

int run_classpoly(const ClasspolyArgs& a)
{
    if (!quadratic::is_discriminant(a.D)) {
        std::cerr << "error: " << a.D << " is not a negative discriminant (D = 0 or 1 mod 4)\n";
        return kBadParams;
    }
    const auto c = a.cache.open();
    const cache::Params key{{"D", a.D}};
    std::optional<IntPolynomial> poly;
    if (c) {
        try {
            if (auto e = c->load(cache::Kind::classpoly, key); e && e->version == cache::kToolVersion)
                poly = cache::to_int_polynomial(*e);
        } catch (const CacheError& e) {
            if (!a.cache.force) {
                std::cerr << "error: " << e.what() << "\n";
                return kFail;
            }
        }
    }
    if (!poly) {
        classpoly::Options opts;
        opts.precision = a.prec_bits;
        const classpoly::ClassPolynomial H = classpoly::class_polynomial(a.D, opts);
        poly = H.poly;
        if (c)
            c->store(cache::make_entry(H), a.cache.force);
    }
    if (a.json)
        std::cout << "{\"D\":" << a.D << ",\"coeffs\":" << json_int_array(poly->coefficients()) << "}\n";
    else
        std::cout << poly->to_string() << "\n";
    return kPass;
}

struct ModpolyArgs {
    long s = 0;
    long budget = 0;
    bool phi = false;
    bool json = false;
    CacheFlags cache;
};

int run_modpoly(const ModpolyArgs& a)
{
    if (a.s < 1 || a.s > transform::kMaxLevel) {
        std::cerr << "error: level " << a.s << " is outside 1.." << transform::kMaxLevel << "\n";
        return kBadParams;
    }
    const cache::Kind kind = a.phi ? cache::Kind::Phipoly : cache::Kind::Jpoly;
    const auto c = a.cache.open();
    const cache::Params key{{"s", a.s}};
    std::optional<BiPolynomial> poly;
    if (c) {
        try {
            if (auto e = c->load(kind, key); e && e->version == cache::kToolVersion)
                poly = cache::to_bipolynomial(*e);
        } catch (const CacheError& e) {
            if (!a.cache.force) {
                std::cerr << "error: " << e.what() << "\n";
                return kFail;
            }
        }
    }
    if (!poly) {
        poly = a.phi ? transform::phi_polynomial(a.s, a.budget) : transform::modular_polynomial_J(a.s, a.budget);
        if (c)
            c->store(cache::make_entry(kind, a.s, *poly), a.cache.force);
    }
    if (a.json) {
        std::cout << "{\"s\":" << a.s << ",\"kind\":\"" << (a.phi ? "Phi" : "J") << "\",\"terms\":[";
        const auto terms = poly->terms();
        for (std::size_t k = 0; k < terms.size(); ++k)
            std::cout << (k ? "," : "") << "[" << terms[k].i << "," << terms[k].j << "," << terms[k].c.get_str() << "]";
        std::cout << "]}\n";
    } else {
        std::cout << poly->to_string() << "\n";
    }
    return kPass;
}

struct VerifyArgs {
    std::string suite;
    std::optional<long> D;
    std::optional<long> p;
    std::optional<long> s;
    std::optional<long> dmax;
    long pmax = 50;
    long d_K = 0;
    long f = 1;
    long f_prime = 0;
    long budget = 0;
    long prec = 0;
    long count = 100;
    long seed = 1;
    long bound = 50;
};

struct Outcome {
    bool pass = false;
    double residual = 0;
};

class Runner {
public:
    explicit Runner(report::Reporter& rep) : rep_(rep) {}

    // Runs one check and emits its record. Parameter errors propagate.
    void run(const std::string& suite, const cache::Params& params, const std::function<Outcome()>& check)
    {
        report::Record r;
        r.suite = suite;
        r.params = params;
        const report::Stopwatch sw;
        try {
            const Outcome o = check();
            r.pass = o.pass;
            r.residual = o.residual;
        } catch (const std::exception& e) {
            if (is_parameter_error(e))
                throw;
            r.pass = false;
            r.error = e.what();
        }
        r.seconds = sw.seconds();
        rep_.emit(r);
    }

private:
    report::Reporter& rep_;
};

std::vector<long> discriminants_up_to(long dmax)
{
    std::vector<long> out;
    for (long D = -3; D >= -dmax; --D)
        if (quadratic::is_discriminant(D))
            out.push_back(D);
    return out;
}

std::vector<long> primes_up_to(long n)
{
    std::vector<long> out;
    for (long p = 2; p <= n; ++p)
        if (quadratic::is_prime(p))
            out.push_back(p);
    return out;
}

// Split primes p <= pmax prime to the conductor with H_D squarefree mod p.
std::vector<long> admissible_primes(long D, long pmax)
{
    const IntPolynomial H = classpoly::class_polynomial(D).poly;
    std::vector<long> out;
    for (long p : primes_up_to(pmax)) {
        try {
            if (quadratic::splitting_type(D, p) != quadratic::Splitting::split)
                continue;
        } catch (const ConductorDivisor&) {
            continue;
        }
        if (cmverify::squarefree_mod(H, p))
            out.push_back(p);
    }
    return out;
}

long require(const std::optional<long>& v, const char* name)
{
    if (!v)
        throw std::invalid_argument(std::string("suite needs ") + name);
    return *v;
}

void run_decomposition(Runner& run, const VerifyArgs& a, bool frobenius)
{
    const std::string suite = frobenius ? "frobenius" : "splitting";
    auto check = [&](long D, long p) {
        run.run(suite, {{"D", D}, {"p", p}}, [&] {
            return Outcome{frobenius ? cmverify::frobenius_order_check(D, p)
                                     : cmverify::splitting_completeness_check(D, p)};
        });
    };
    if (a.D) {
        check(*a.D, require(a.p, "-p"));
        return;
    }
    for (long D : discriminants_up_to(a.dmax.value_or(200)))
        for (long p : admissible_primes(D, a.pmax))
            check(D, p);
}

int run_verify(const VerifyArgs& a)
{
    report::Reporter rep(std::cout);
    Runner run(rep);
    const std::string& s = a.suite;
    if (s == "kronecker") {
        const long p = require(a.p, "-p");
        if (!quadratic::is_prime(p))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        run.run(s, {{"p", p}}, [&] { return Outcome{transform::kronecker_congruence_check(p, a.budget)}; });
    } else if (s == "frobenius" || s == "splitting") {
        run_decomposition(run, a, s == "frobenius");
    } else if (s == "genus") {
        const std::vector<long> Ds = a.D ? std::vector<long>{*a.D} : discriminants_up_to(a.dmax.value_or(400));
        for (long D : Ds) {
            if (!quadratic::is_discriminant(D))
                throw InvalidDiscriminant(std::to_string(D) + " is not a negative discriminant");
            run.run(s, {{"D", D}}, [&] { return Outcome{cmverify::genus_check(D)}; });
        }
    } else if (s == "divides") {
        if (a.D) {
            const long D = *a.D;
            const long level = a.s.value_or(classpoly::primitive_norm(D));
            run.run(s, {{"D", D}, {"s", level}}, [&] { return Outcome{classpoly::divides_check(D, level)}; });
        } else {
            for (long D : discriminants_up_to(a.dmax.value_or(100))) {
                const long level = classpoly::primitive_norm(D);
                if (level > transform::kMaxLevel)
                    continue;
                run.run(s, {{"D", D}, {"s", level}}, [&] { return Outcome{classpoly::divides_check(D, level)}; });
            }
        }
    } else if (s == "product36") {
        const long p = require(a.p, "-p");
        if (!quadratic::is_prime(p))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        const long prec = a.prec > 0 ? a.prec : 192;
        run.run(s, {{"p", p}, {"prec", prec}}, [&] {
            const auto prod = transform::phi_product(p, numerics::BigComplex::i(prec), prec);
            Integer p12;
            mpz_ui_pow_ui(p12.get_mpz_t(), static_cast<unsigned long>(p), 12);
            if (p == 2)
                p12 = -p12;
            const numerics::BigReal target(p12, prec);
            const numerics::BigComplex diff = prod - numerics::BigComplex(target);
            const double rel = (numerics::abs(diff) / numerics::abs(target)).to_double();
            return Outcome{rel < std::ldexp(1.0, -64), rel};
        });
    } else if (s == "congruence-product") {
        const long D = require(a.D, "-D");
        const long p = require(a.p, "-p");
        run.run(s, {{"D", D}, {"p", p}}, [&] {
            const auto r = cmverify::congruence_product(D, p);
            return Outcome{r.pass, r.residual};
        });
    } else if (s == "correspondence") {
        if (a.d_K == 0 || a.f_prime == 0)
            throw std::invalid_argument("suite needs --dk and --fprime");
        run.run(s, {{"dK", a.d_K}, {"f", a.f}, {"fprime", a.f_prime}}, [&] {
            const auto r = cmverify::correspondence_report(a.d_K, a.f, a.f_prime);
            return Outcome{r.pass, r.max_root_residual};
        });
    } else if (s == "leading") {
        const long level = require(a.s, "-s");
        run.run(s, {{"s", level}}, [&] { return Outcome{transform::leading_coefficient_check(level, a.budget)}; });
    } else if (s == "eta-multiplier") {
        const long prec = a.prec > 0 ? a.prec : 128;
        run.run(s, {{"count", a.count}, {"seed", a.seed}, {"prec", prec}}, [&] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(a.seed));
            std::uniform_real_distribution<double> xs(-0.5, 0.5), ys(0.5, 2.0);
            double worst = 0;
            for (long k = 0; k < a.count; ++k) {
                const auto M = modforms::random_sl2z(rng, a.bound);
                const numerics::BigComplex tau(numerics::BigReal(xs(rng), prec), numerics::BigReal(ys(rng), prec));
                worst = std::max(worst, modforms::eta_transformation_residual(M, tau, prec));
            }
            return Outcome{worst < std::ldexp(1.0, -100), worst};
        });
    } else {
        throw std::invalid_argument("unknown suite '" + s + "'");
    }
    return rep.all_pass() ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Class polynomials, modular polynomials and complex multiplication checks"};
    app.set_version_flag("--version", std::string(cache::kToolVersion));
    app.require_subcommand(1);

    ClasspolyArgs cp;
    auto* cmd_cp = app.add_subcommand("classpoly", "Print the class polynomial H_D");
    cmd_cp->add_option("-D", cp.D, "Negative discriminant")->required();
    cmd_cp->add_option("--prec-bits", cp.prec_bits, "Starting precision in bits");
    cmd_cp->add_flag("--json", cp.json, "Print a JSON object");
    add_cache_flags(cmd_cp, cp.cache);

    ModpolyArgs mp;
    auto* cmd_mp = app.add_subcommand("modpoly", "Print the transformation polynomial J_s or Phi_s");
    cmd_mp->add_option("-s", mp.s, "Level 1..7")->required();
    cmd_mp->add_option("--budget", mp.budget, "Number of q-series terms of j");
    cmd_mp->add_flag("--phi", mp.phi, "Print Phi_s instead of J_s");
    cmd_mp->add_flag("--json", mp.json, "Print a JSON object");
    add_cache_flags(cmd_mp, mp.cache);

    VerifyArgs va;
    auto* cmd_v = app.add_subcommand("verify", "Run a verification suite and print JSON report lines");
    cmd_v->add_option("suite", va.suite, "kronecker, frobenius, splitting, genus, divides, product36, "
                                         "congruence-product, correspondence, leading, eta-multiplier")
        ->required();
    cmd_v->add_option("-D", va.D, "Discriminant");
    cmd_v->add_option("-p", va.p, "Prime");
    cmd_v->add_option("-s", va.s, "Level");
    cmd_v->add_option("--dmax", va.dmax, "Sweep all discriminants with |D| <= dmax");
    cmd_v->add_option("--pmax", va.pmax, "Largest prime in a sweep");
    cmd_v->add_option("--dk", va.d_K, "Fundamental discriminant");
    cmd_v->add_option("-f", va.f, "Conductor of the smaller order");
    cmd_v->add_option("--fprime", va.f_prime, "Conductor of the larger order");
    cmd_v->add_option("--budget", va.budget, "q-series budget for transformation polynomials");
    cmd_v->add_option("--prec", va.prec, "Working precision in bits");
    cmd_v->add_option("--count", va.count, "Number of random matrices");
    cmd_v->add_option("--seed", va.seed, "Random seed");
    cmd_v->add_option("--bound", va.bound, "Entry bound for random matrices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadParams;
    }

    try {
        if (*cmd_cp)
            return run_classpoly(cp);
        if (*cmd_mp)
            return run_modpoly(mp);
        return run_verify(va);
    } catch (const RecognitionFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRecognition;
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_parameter_error(e) ? kBadParams : kFail;
    }
}
