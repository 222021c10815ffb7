#pragma once

// Plain-text on-disk cache of computed polynomials.
//
//   CMFORGE v1 <kind>
//   key=value ... version=<tool version> created=<UTC timestamp>
//   <coefficient, low to high>        univariate kinds
//   <i> <j> <coefficient>             bivariate kinds
//   END

#include <cmforge/classpoly.hpp>
#include <cmforge/division.hpp>
#include <cmforge/polynomial.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cmforge::cache {

#ifdef CMFORGE_VERSION
inline constexpr const char* kToolVersion = CMFORGE_VERSION;
#else
inline constexpr const char* kToolVersion = "unknown";
#endif

enum class Kind { Jpoly, Phipoly, classpoly, divpoly };
std::string to_string(Kind k);
// Throws CacheError for an unknown name.
Kind kind_from_string(const std::string& s);
bool is_bivariate(Kind k);

using Params = std::vector<std::pair<std::string, long>>;

struct Entry {
    Kind kind = Kind::classpoly;
    Params params;
    std::string version = kToolVersion;
    std::string created;
    // Univariate payload, low to high.
    std::vector<Rational> coeffs;
    // Bivariate payload, sorted by i then j.
    std::vector<BiPolynomial::Term> terms;

    // Throws CacheError if the key is missing.
    long param(const std::string& key) const;
};

std::string serialize(const Entry& e);
// Throws CacheError on a malformed file, including a missing END line.
Entry parse(const std::string& text);
// Degree and shape consistency with the key parameters; throws CacheError.
void validate(const Entry& e);

Entry make_entry(const classpoly::ClassPolynomial& H);
Entry make_entry(Kind kind, long s, const BiPolynomial& P);
Entry make_entry(const division::DivisionPolynomial& T);
IntPolynomial to_int_polynomial(const Entry& e);
BiPolynomial to_bipolynomial(const Entry& e);

// UTC, ISO 8601 to the second.
std::string timestamp_now();

// A directory of entries guarded by a lock file; writes are serialized
// across processes with flock.
class Cache {
public:
    explicit Cache(std::filesystem::path dir);
    // $CMFORGE_CACHE, else $HOME/.cache/cmforge, else ./.cmforge-cache.
    static std::filesystem::path default_directory();

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path file_for(Kind kind, const Params& params) const;
    // Parsed and validated entry, or nullopt when absent.
    std::optional<Entry> load(Kind kind, const Params& params) const;
    // Refuses to replace an entry written by another tool version unless
    // force is set.
    void store(const Entry& e, bool force = false) const;

private:
    std::filesystem::path dir_;
};

} // namespace cmforge::cache
