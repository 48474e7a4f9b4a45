#pragma once

/// Text file formats. Every file starts with `rankforge-<kind> v1` followed by the field header;
/// lines starting with '#' are comments (except `# lifted-from`, which collections keep).

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rankforge/expander.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/twosource.hpp"

namespace rankforge {

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-comment, non-blank line; throws at end of input.
    std::string next(const std::string& expecting) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (line[first] == '#') {
                comments_.push_back(line.substr(first));
                continue;
            }
            return line.substr(first);
        }
        throw ParseError("unexpected end of input, expecting " + expecting);
    }

    /// True when only blank or comment lines remain.
    bool at_end() {
        std::string line;
        while (in_.peek() != EOF) {
            std::streampos pos = in_.tellg();
            std::getline(in_, line);
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                ++lineno_;
                continue;
            }
            in_.seekg(pos);
            return false;
        }
        return true;
    }

    std::size_t line() const noexcept { return lineno_; }
    const std::vector<std::string>& comments() const noexcept { return comments_; }

    ParseError error(const std::string& msg) const {
        return ParseError("line " + std::to_string(lineno_) + ": " + msg);
    }

private:
    std::istream& in_;
    std::size_t lineno_ = 0;
    std::vector<std::string> comments_;
};

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

/// Parses `key=value` tokens after an optional leading word.
inline std::map<std::string, std::string> parse_keys(LineReader& r, const std::string& line, std::size_t skip = 0) {
    std::map<std::string, std::string> kv;
    auto toks = split_ws(line);
    for (std::size_t i = skip; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos || eq == 0) throw r.error("expected key=value, got '" + toks[i] + "'");
        kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return kv;
}

inline const std::string& need(LineReader& r, const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw r.error("missing field '" + key + "'");
    return it->second;
}

inline std::size_t need_size(LineReader& r, const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto& v = need(r, kv, key);
    std::int64_t x;
    try {
        x = parse_int64(v, key);
    } catch (const ParseError&) {
        throw r.error("field '" + key + "' is not an integer: '" + v + "'");
    }
    if (x < 0) throw r.error("field '" + key + "' must be nonnegative");
    return static_cast<std::size_t>(x);
}

inline Rational need_rational(LineReader& r, const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto& v = need(r, kv, key);
    try {
        return parse_rational(v, key);
    } catch (const ParseError&) {
        throw r.error("field '" + key + "' is not a rational a/b: '" + v + "'");
    }
}

inline void expect_magic(LineReader& r, const std::string& magic) {
    auto line = r.next(magic);
    if (line != magic) throw r.error("expected '" + magic + "', got '" + line + "'");
}

inline FieldPtr read_field(LineReader& r) {
    auto line = r.next("field header");
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != "field") throw r.error("expected field header, got '" + line + "'");
    auto kv = parse_keys(r, line, 1);
    auto p = need_size(r, kv, "p");
    auto k = need_size(r, kv, "k");
    if (p < 2 || p > UINT32_MAX || k < 1 || k > 64) throw r.error("field header: invalid p or k");
    FieldPtr f;
    try {
        f = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
    } catch (const InvalidArgument& e) {
        throw r.error(std::string("field header: ") + e.what());
    }
    if (k > 1) {
        const auto& mod = need(r, kv, "modulus");
        std::string expect;
        for (std::size_t i = 0; i < f->modulus().size(); ++i)
            expect += (i ? "," : "") + std::to_string(f->modulus()[i]);
        if (mod != expect)
            throw r.error("field header: modulus " + mod + " differs from the canonical modulus " + expect);
    }
    return f;
}

inline void write_matrix_body(std::ostream& os, const FMatrix& m) {
    os << "rankforge-matrix v1\n" << m.field()->header() << "\nrows=" << m.rows() << " cols=" << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.field()->format(m(i, j));
        os << "\n";
    }
}

inline FMatrix read_matrix_body(LineReader& r, const FieldPtr& expect_field) {
    expect_magic(r, "rankforge-matrix v1");
    FieldPtr f = read_field(r);
    if (expect_field && !f->same_as(*expect_field)) throw r.error("matrix field differs from the enclosing object");
    auto kv = parse_keys(r, r.next("matrix shape"));
    auto rows = need_size(r, kv, "rows");
    auto cols = need_size(r, kv, "cols");
    FMatrix m(expect_field ? expect_field : f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        auto toks = split_ws(r.next("matrix row"));
        if (toks.size() != cols)
            throw r.error("matrix row " + std::to_string(i) + " has " + std::to_string(toks.size()) +
                          " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) {
            try {
                m(i, j) = f->parse(toks[j]);
            } catch (const ParseError& e) {
                throw r.error(e.what());
            }
        }
    }
    return m;
}

inline void check_shape(LineReader& r, const FMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
    if (m.rows() != rows || m.cols() != cols)
        throw r.error(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

inline void expect_end(LineReader& r) {
    if (!r.at_end()) throw r.error("trailing content after the object");
}

} // namespace detail

// ---- matrix ----

inline void write_matrix(std::ostream& os, const FMatrix& m) { detail::write_matrix_body(os, m); }

inline FMatrix read_matrix(std::istream& in) {
    detail::LineReader r(in);
    auto m = detail::read_matrix_body(r, nullptr);
    detail::expect_end(r);
    return m;
}

// ---- seeded collection ----

inline void write_collection(std::ostream& os, const SeededCondenser& c) {
    os << "rankforge-collection v1\n" << c.field->header() << "\n";
    if (c.lifted_from) os << "# lifted-from p=" << c.lifted_from->first << " k=" << c.lifted_from->second << "\n";
    os << "kind=" << to_string(c.claim.kind) << " n=" << c.n << " t=" << c.t << " r=" << c.claim.r;
    if (c.claim.lossless())
        os << " L=" << to_string(c.claim.L);
    else
        os << " eps=" << to_string(c.claim.eps) << " mode=" << to_string(c.claim.mode);
    os << " count=" << c.maps.size() << "\n";
    for (const auto& m : c.maps) detail::write_matrix_body(os, m);
}

inline SeededCondenser read_collection(std::istream& in) {
    detail::LineReader r(in);
    detail::expect_magic(r, "rankforge-collection v1");
    SeededCondenser c;
    c.field = detail::read_field(r);
    auto kv = detail::parse_keys(r, r.next("collection parameters"));
    for (const auto& com : r.comments()) {
        auto toks = detail::split_ws(com);
        if (toks.size() == 4 && toks[1] == "lifted-from") {
            auto lk = detail::parse_keys(r, com, 2);
            c.lifted_from = std::make_pair(static_cast<std::uint32_t>(detail::need_size(r, lk, "p")),
                                           static_cast<std::uint32_t>(detail::need_size(r, lk, "k")));
        }
    }
    const auto& kind = detail::need(r, kv, "kind");
    c.n = detail::need_size(r, kv, "n");
    c.t = detail::need_size(r, kv, "t");
    auto rr = detail::need_size(r, kv, "r");
    if (kind == "weak" || kind == "strong") {
        auto L = detail::need_rational(r, kv, "L");
        c.claim = kind == "weak" ? SeededClaim::weak(rr, L) : SeededClaim::strong(rr, L);
    } else if (kind == "lossy") {
        auto eps = detail::need_rational(r, kv, "eps");
        const auto& mode = detail::need(r, kv, "mode");
        if (mode != "eq" && mode != "le") throw r.error("field 'mode' must be eq or le, got '" + mode + "'");
        c.claim = SeededClaim::lossy(rr, eps, mode == "eq" ? RankMode::Eq : RankMode::Le);
    } else {
        throw r.error("field 'kind' must be weak, strong or lossy, got '" + kind + "'");
    }
    auto count = detail::need_size(r, kv, "count");
    for (std::size_t i = 0; i < count; ++i) {
        c.maps.push_back(detail::read_matrix_body(r, c.field));
        detail::check_shape(r, c.maps.back(), c.t, c.n, "collection matrix " + std::to_string(i));
    }
    detail::expect_end(r);
    try {
        c.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return c;
}

// ---- subspace design ----

inline void write_design(std::ostream& os, const SubspaceDesign& d) {
    os << "rankforge-design v1\n" << d.field->header() << "\n";
    os << "kind=" << to_string(d.kind) << " n=" << d.n << " r=" << d.r << " L=" << to_string(d.L)
       << " count=" << d.subspaces.size() << "\n";
    for (const auto& h : d.subspaces) detail::write_matrix_body(os, h);
}

inline SubspaceDesign read_design(std::istream& in) {
    detail::LineReader r(in);
    detail::expect_magic(r, "rankforge-design v1");
    SubspaceDesign d;
    d.field = detail::read_field(r);
    auto kv = detail::parse_keys(r, r.next("design parameters"));
    const auto& kind = detail::need(r, kv, "kind");
    if (kind != "weak" && kind != "strong") throw r.error("field 'kind' must be weak or strong, got '" + kind + "'");
    d.kind = kind == "weak" ? Guarantee::Weak : Guarantee::Strong;
    d.n = detail::need_size(r, kv, "n");
    d.r = detail::need_size(r, kv, "r");
    d.L = detail::need_rational(r, kv, "L");
    auto count = detail::need_size(r, kv, "count");
    for (std::size_t i = 0; i < count; ++i) {
        d.subspaces.push_back(detail::read_matrix_body(r, d.field));
        if (d.subspaces.back().cols() != d.n) throw r.error("design subspace " + std::to_string(i) + " has wrong width");
    }
    detail::expect_end(r);
    try {
        d.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return d;
}

// ---- dimension expander ----

inline void write_expander(std::ostream& os, const DimExpander& x) {
    os << "rankforge-expander v1\n" << x.field->header() << "\n";
    os << "n=" << x.n << " degree=" << x.degree() << " eps=" << to_string(x.eps) << " alpha=" << to_string(x.alpha)
       << "\n";
    for (const auto& a : x.maps) detail::write_matrix_body(os, a);
}

inline DimExpander read_expander(std::istream& in) {
    detail::LineReader r(in);
    detail::expect_magic(r, "rankforge-expander v1");
    DimExpander x;
    x.field = detail::read_field(r);
    auto kv = detail::parse_keys(r, r.next("expander parameters"));
    x.n = detail::need_size(r, kv, "n");
    auto degree = detail::need_size(r, kv, "degree");
    x.eps = detail::need_rational(r, kv, "eps");
    x.alpha = detail::need_rational(r, kv, "alpha");
    for (std::size_t i = 0; i < degree; ++i) {
        x.maps.push_back(detail::read_matrix_body(r, x.field));
        detail::check_shape(r, x.maps.back(), x.n, x.n, "expander map " + std::to_string(i));
    }
    detail::expect_end(r);
    try {
        x.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return x;
}

// ---- rank-metric code ----

inline void write_code(std::ostream& os, const RankMetricCode& c) {
    os << "rankforge-code v1\n" << c.field->header() << "\n";
    os << "n=" << c.n << " m=" << c.m << " dim=" << c.dim() << " dist=" << c.dist << "\n";
    for (const auto& b : c.basis) detail::write_matrix_body(os, b);
}

inline RankMetricCode read_code(std::istream& in) {
    detail::LineReader r(in);
    detail::expect_magic(r, "rankforge-code v1");
    RankMetricCode c;
    c.field = detail::read_field(r);
    auto kv = detail::parse_keys(r, r.next("code parameters"));
    c.n = detail::need_size(r, kv, "n");
    c.m = detail::need_size(r, kv, "m");
    auto dim = detail::need_size(r, kv, "dim");
    c.dist = detail::need_size(r, kv, "dist");
    for (std::size_t i = 0; i < dim; ++i) {
        c.basis.push_back(detail::read_matrix_body(r, c.field));
        detail::check_shape(r, c.basis.back(), c.n, c.m, "code basis matrix " + std::to_string(i));
    }
    detail::expect_end(r);
    try {
        c.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return c;
}

// ---- bilinear condenser ----

/// `le=r`, `le=s` or `le=rs` marks sources whose claim covers all smaller ranks; omitted otherwise.
inline void write_bilinear(std::ostream& os, const BilinearCondenser& b) {
    os << "rankforge-bilinear v1\n" << b.field->header() << "\n";
    os << "n=" << b.n << " m=" << b.m << " t=" << b.t << " r=" << b.claim.r << " s=" << b.claim.s
       << " eps=" << to_string(b.claim.eps);
    if (b.claim.le_r || b.claim.le_s) os << " le=" << (b.claim.le_r ? "r" : "") << (b.claim.le_s ? "s" : "");
    os << "\n";
    detail::write_matrix_body(os, b.E);
}

inline BilinearCondenser read_bilinear(std::istream& in) {
    detail::LineReader r(in);
    detail::expect_magic(r, "rankforge-bilinear v1");
    BilinearCondenser b;
    b.field = detail::read_field(r);
    auto kv = detail::parse_keys(r, r.next("bilinear parameters"));
    b.n = detail::need_size(r, kv, "n");
    b.m = detail::need_size(r, kv, "m");
    b.t = detail::need_size(r, kv, "t");
    b.claim.r = detail::need_size(r, kv, "r");
    b.claim.s = detail::need_size(r, kv, "s");
    b.claim.eps = detail::need_rational(r, kv, "eps");
    if (auto it = kv.find("le"); it != kv.end()) {
        if (it->second != "r" && it->second != "s" && it->second != "rs")
            throw r.error("field 'le' must be r, s or rs, got '" + it->second + "'");
        b.claim.le_r = it->second.find('r') != std::string::npos;
        b.claim.le_s = it->second.find('s') != std::string::npos;
    }
    b.E = detail::read_matrix_body(r, b.field);
    detail::check_shape(r, b.E, b.t, b.n * b.m, "bilinear matrix E");
    detail::expect_end(r);
    try {
        b.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return b;
}

/// The `rankforge-<kind>` tag on the first non-comment line.
inline std::string peek_kind(std::istream& in) {
    std::string line;
    auto start = in.tellg();
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        break;
    }
    in.clear();
    in.seekg(start);
    auto toks = detail::split_ws(line);
    if (toks.size() != 2 || toks[0].rfind("rankforge-", 0) != 0 || toks[1] != "v1")
        throw ParseError("line 1: not a rankforge v1 file");
    return toks[0].substr(10);
}

} // namespace rankforge
