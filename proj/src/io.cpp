#include "corrgeom/io.hpp"

#include <algorithm>

#include "corrgeom/errors.hpp"

namespace corrgeom::io {

namespace {

json real_rows(const CMat &m, bool imag) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void fill_part(CMat &m, const json &rows, const char *name, bool imag) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != m.rows()) {
        throw InputError(std::string("state JSON: '") + name + "' must have " + std::to_string(m.rows()) + " rows");
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const json &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols()) {
            throw InputError(std::string("state JSON: row ") + std::to_string(i) + " of '" + name + "' has the wrong length");
        }
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const json &v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) {
                throw InputError(std::string("state JSON: non-numeric entry in '") + name + "'");
            }
            const double x = v.get<double>();
            if (imag) {
                m(i, j).imag(x);
            } else {
                m(i, j).real(x);
            }
        }
    }
}

int read_dim(const json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw InputError(std::string("state JSON: missing integer field '") + key + "'");
    }
    return j.at(key).get<int>();
}

json vector_json(const std::vector<int> &v) { return json(v); }

}  // namespace

json state_to_json(const BipartiteState &s) {
    return {{"d1", s.d1()}, {"d2", s.d2()}, {"rho_re", real_rows(s.rho(), false)}, {"rho_im", real_rows(s.rho(), true)}};
}

BipartiteState state_from_json(const json &j) {
    if (!j.is_object()) {
        throw InputError("state JSON: top level must be an object");
    }
    const int d1 = read_dim(j, "d1");
    const int d2 = read_dim(j, "d2");
    if (d1 < 2 || d2 < 2 || d1 > 10 || d2 > 10) {
        throw InputError("state JSON: dimensions must lie in [2, 10]");
    }
    const int n = d1 * d2;
    CMat rho = CMat::Zero(n, n);
    if (!j.contains("rho_re")) {
        throw InputError("state JSON: missing field 'rho_re'");
    }
    if (!j.contains("rho_im")) {
        throw InputError("state JSON: missing field 'rho_im'");
    }
    fill_part(rho, j.at("rho_re"), "rho_re", false);
    fill_part(rho, j.at("rho_im"), "rho_im", true);
    for (const auto &[key, value] : j.items()) {
        if (key != "d1" && key != "d2" && key != "rho_re" && key != "rho_im") {
            throw InputError("state JSON: unknown field '" + key + "'");
        }
    }
    return BipartiteState(std::move(rho), d1, d2);
}

BipartiteState state_from_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw InputError("state JSON: parse error at line " + std::to_string(line) + " (byte " +
                         std::to_string(e.byte) + "): " + e.what());
    }
    return state_from_json(j);
}

json spectrum_to_json(const ObservableSpectrum &a) {
    json eig = json::array();
    for (const cplx &z : a.eigenvalues) {
        eig.push_back({{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}});
    }
    json out = {{"d", a.d}, {"kind", std::string(to_string(a.kind))}, {"eigenvalues", eig}};
    out["match_order"] = a.match_order ? json(*a.match_order) : json(nullptr);
    return out;
}

json moments_to_json(const MomentPoint &p) {
    return {{"d1", p.d1}, {"d2", p.d2}, {"s2", p.s2}, {"s4", p.s4}, {"r2t", p.r2t}, {"r4t", p.r4t}};
}

json verdict_to_json(const SchmidtVerdict &v) {
    return {{"trace_norm", v.trace_norm_value},
            {"bound", v.bound},
            {"k_tested", v.k_tested},
            {"detected", v.detected},
            {"margin", v.margin}};
}

json construction_to_json(const Construction &c) {
    json checks = json::array();
    for (const IdentityCheck &ic : c.checks) {
        checks.push_back(
            {{"identity", ic.identity}, {"residual", ic.residual}, {"tolerance", ic.tolerance}, {"pass", ic.pass}});
    }
    const MomentPoint p = normalized_point(c.bloch);
    const SchmidtVerdict v = detect_schmidt(c.bloch, 1);
    return {{"state", state_to_json(c.state)},
            {"moments", moments_to_json(p)},
            {"detect_k1", verdict_to_json(v)},
            {"verification", {{"pass", c.pass()}, {"checks", checks}}}};
}

json coverage_to_json(const KinkCoverage &c) {
    json kinks = json::array();
    for (const KinkEntry &k : c.kinks) {
        kinks.push_back({{"n", k.n}, {"covered", k.covered}, {"method", k.method}});
    }
    return {{"d", c.d}, {"covered", vector_json(c.covered())}, {"missing", vector_json(c.missing())}, {"kinks", kinks}};
}

}  // namespace corrgeom::io
