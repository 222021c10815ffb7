#include <cmforge/cache.hpp>

#include <cmforge/quadratic.hpp>
#include <cmforge/transform.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace cmforge::cache {

namespace fs = std::filesystem;

namespace {

const char* kMagic = "CMFORGE v1";

class FileLock {
public:
    FileLock(const fs::path& path, int mode)
    {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0)
            throw CacheError("cannot open lock file " + path.string() + ": " + std::strerror(errno));
        while (::flock(fd_, mode) != 0) {
            if (errno != EINTR) {
                ::close(fd_);
                throw CacheError("cannot lock " + path.string() + ": " + std::strerror(errno));
            }
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;
    ~FileLock()
    {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }

private:
    int fd_ = -1;
};

Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw CacheError("bad coefficient '" + s + "'");
    if (r.get_den() == 0)
        throw CacheError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Integer parse_integer(const std::string& s)
{
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
        throw CacheError("bad coefficient '" + s + "'");
    return z;
}

long parse_long(const std::string& s)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size())
            throw CacheError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw CacheError("bad integer '" + s + "'");
    }
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw CacheError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string to_string(Kind k)
{
    switch (k) {
    case Kind::Jpoly:
        return "Jpoly";
    case Kind::Phipoly:
        return "Phipoly";
    case Kind::classpoly:
        return "classpoly";
    case Kind::divpoly:
        return "divpoly";
    }
    return "?";
}

Kind kind_from_string(const std::string& s)
{
    for (Kind k : {Kind::Jpoly, Kind::Phipoly, Kind::classpoly, Kind::divpoly})
        if (to_string(k) == s)
            return k;
    throw CacheError("unknown cache kind '" + s + "'");
}

bool is_bivariate(Kind k) { return k == Kind::Jpoly || k == Kind::Phipoly; }

long Entry::param(const std::string& key) const
{
    for (const auto& [k, v] : params)
        if (k == key)
            return v;
    throw CacheError("cache entry lacks parameter " + key);
}

std::string serialize(const Entry& e)
{
    std::ostringstream out;
    out << kMagic << ' ' << to_string(e.kind) << '\n';
    for (const auto& [k, v] : e.params)
        out << k << '=' << v << ' ';
    out << "version=" << e.version << " created=" << e.created << '\n';
    if (is_bivariate(e.kind)) {
        for (const auto& t : e.terms)
            out << t.i << ' ' << t.j << ' ' << t.c.get_str() << '\n';
    } else {
        for (const auto& c : e.coeffs)
            out << c.get_str() << '\n';
    }
    out << "END\n";
    return out.str();
}

Entry parse(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw CacheError("empty cache file");
    const std::string magic(kMagic);
    if (line.rfind(magic + ' ', 0) != 0)
        throw CacheError("missing header line");
    Entry e;
    e.kind = kind_from_string(line.substr(magic.size() + 1));
    if (!std::getline(in, line))
        throw CacheError("missing parameter line");
    {
        std::istringstream ps(line);
        std::string tok;
        bool have_version = false;
        bool have_created = false;
        while (ps >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CacheError("bad parameter '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            const std::string value = tok.substr(eq + 1);
            if (key == "version") {
                e.version = value;
                have_version = true;
            } else if (key == "created") {
                e.created = value;
                have_created = true;
            } else {
                e.params.emplace_back(key, parse_long(value));
            }
        }
        if (!have_version || !have_created)
            throw CacheError("parameter line lacks version or created");
    }
    bool ended = false;
    while (std::getline(in, line)) {
        if (line == "END") {
            ended = true;
            break;
        }
        if (is_bivariate(e.kind)) {
            std::istringstream ts(line);
            std::string a, b, c, extra;
            if (!(ts >> a >> b >> c) || (ts >> extra))
                throw CacheError("bad term line '" + line + "'");
            const long i = parse_long(a);
            const long j = parse_long(b);
            if (i < 0 || j < 0)
                throw CacheError("negative exponent in '" + line + "'");
            e.terms.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), parse_integer(c)});
        } else {
            e.coeffs.push_back(parse_rational(line));
        }
    }
    if (!ended)
        throw CacheError("cache file is truncated (no END line)");
    while (std::getline(in, line))
        if (!line.empty())
            throw CacheError("data after END line");
    return e;
}

void validate(const Entry& e)
{
    auto check_monic = [&](long expected_degree) {
        const long deg = static_cast<long>(e.coeffs.size()) - 1;
        if (deg != expected_degree)
            throw CacheError(to_string(e.kind) + " entry has degree " + std::to_string(deg) + ", expected "
                             + std::to_string(expected_degree));
        if (e.coeffs.back() != 1)
            throw CacheError(to_string(e.kind) + " entry is not monic");
    };
    switch (e.kind) {
    case Kind::classpoly: {
        const long D = e.param("D");
        if (!quadratic::is_discriminant(D))
            throw CacheError("classpoly entry has invalid D=" + std::to_string(D));
        check_monic(quadratic::class_number(D));
        for (const auto& c : e.coeffs)
            if (c.get_den() != 1)
                throw CacheError("classpoly entry has a non-integral coefficient");
        break;
    }
    case Kind::divpoly:
        check_monic(division::proper_division_count(e.param("N")));
        break;
    case Kind::Jpoly:
    case Kind::Phipoly: {
        const long s = e.param("s");
        if (s < 1)
            throw CacheError("bad level s=" + std::to_string(s));
        std::size_t max_i = 0;
        for (std::size_t k = 0; k < e.terms.size(); ++k) {
            const auto& t = e.terms[k];
            if (k > 0) {
                const auto& p = e.terms[k - 1];
                if (p.i > t.i || (p.i == t.i && p.j >= t.j))
                    throw CacheError("terms out of order");
            }
            max_i = std::max(max_i, t.i);
        }
        const long psi = transform::psi(s);
        if (static_cast<long>(max_i) != psi)
            throw CacheError(to_string(e.kind) + " entry has X-degree " + std::to_string(max_i) + ", expected "
                             + std::to_string(psi));
        const BiPolynomial P = to_bipolynomial(e);
        if (P.row(static_cast<std::size_t>(psi)) != IntPolynomial{1})
            throw CacheError(to_string(e.kind) + " entry is not monic in X");
        break;
    }
    }
}

std::string timestamp_now()
{
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Entry make_entry(const classpoly::ClassPolynomial& H)
{
    Entry e;
    e.kind = Kind::classpoly;
    e.params = {{"D", H.D}};
    e.created = timestamp_now();
    for (const auto& c : H.poly.coefficients())
        e.coeffs.emplace_back(c);
    return e;
}

Entry make_entry(Kind kind, long s, const BiPolynomial& P)
{
    if (!is_bivariate(kind))
        throw std::invalid_argument("bivariate entries are Jpoly or Phipoly");
    Entry e;
    e.kind = kind;
    e.params = {{"s", s}};
    e.created = timestamp_now();
    e.terms = P.terms();
    return e;
}

Entry make_entry(const division::DivisionPolynomial& T)
{
    Entry e;
    e.kind = Kind::divpoly;
    e.params = {{"D", T.D}, {"N", T.N}};
    e.created = timestamp_now();
    e.coeffs = T.coeffs;
    return e;
}

IntPolynomial to_int_polynomial(const Entry& e)
{
    std::vector<Integer> c;
    for (const auto& r : e.coeffs) {
        if (r.get_den() != 1)
            throw CacheError("coefficient " + r.get_str() + " is not an integer");
        c.push_back(r.get_num());
    }
    return IntPolynomial(std::move(c));
}

BiPolynomial to_bipolynomial(const Entry& e)
{
    BiPolynomial P;
    for (const auto& t : e.terms)
        P.set_coeff(t.i, t.j, t.c);
    return P;
}

Cache::Cache(fs::path dir)
    : dir_(std::move(dir))
{
}

fs::path Cache::default_directory()
{
    if (const char* env = std::getenv("CMFORGE_CACHE"); env && *env)
        return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "cmforge";
    return ".cmforge-cache";
}

fs::path Cache::file_for(Kind kind, const Params& params) const
{
    std::string name = to_string(kind);
    for (const auto& [k, v] : params)
        name += "_" + k + std::to_string(v);
    return dir_ / (name + ".txt");
}

std::optional<Entry> Cache::load(Kind kind, const Params& params) const
{
    const fs::path file = file_for(kind, params);
    if (!fs::exists(dir_) || !fs::exists(file))
        return std::nullopt;
    std::string text;
    {
        FileLock lock(dir_ / ".lock", LOCK_SH);
        text = read_file(file);
    }
    Entry e = parse(text);
    if (e.kind != kind || e.params != params)
        throw CacheError(file.string() + " holds a different entry");
    validate(e);
    return e;
}

void Cache::store(const Entry& e, bool force) const
{
    validate(e);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        throw CacheError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    FileLock lock(dir_ / ".lock", LOCK_EX);
    const fs::path file = file_for(e.kind, e.params);
    if (fs::exists(file) && !force) {
        std::string existing_version;
        try {
            existing_version = parse(read_file(file)).version;
        } catch (const CacheError&) {
            throw CacheError(file.string() + " is corrupt; use --force to replace it");
        }
        if (existing_version != e.version)
            throw CacheError(file.string() + " was written by version " + existing_version
                             + "; use --force to replace it");
    }
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize(e);
        if (!out)
            throw CacheError("cannot write " + tmp.string());
    }
    fs::rename(tmp, file, ec);
    if (ec)
        throw CacheError("cannot move " + tmp.string() + " into place: " + ec.message());
}

} // namespace cmforge::cache
