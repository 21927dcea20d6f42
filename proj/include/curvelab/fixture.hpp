#ifndef CURVELAB_FIXTURE_HPP
#define CURVELAB_FIXTURE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "curvelab/incidence.hpp"

namespace curvelab {

using ordered_json = nlohmann::ordered_json;

struct fixture_error : math_error {
    explicit fixture_error(const std::string& path, const std::string& what)
        : math_error("fixture field " + path + ": " + what) {}
};

template <class K>
struct FieldCodec;

template <>
struct FieldCodec<Fp> {
    static constexpr const char* label() { return "prime"; }
    static ordered_json encode(const Fp& x) { return static_cast<int64_t>(x.rep()); }
    static Fp decode(const ordered_json& j, const std::string& path) {
        if (!j.is_number_integer()) throw fixture_error(path, "expected an integer representative");
        const int64_t v = j.get<int64_t>();
        if (v < 0 || static_cast<uint64_t>(v) >= FpContext::modulus())
            throw fixture_error(path, "representative outside [0, p)");
        return Fp::from_rep(static_cast<uint64_t>(v));
    }
    static ordered_json field_tag() { return static_cast<int64_t>(FpContext::modulus()); }
};

template <>
struct FieldCodec<Rat> {
    static constexpr const char* label() { return "rational"; }
    static ordered_json encode(const Rat& x) {
        const auto s = x.str();
        // integers stay integers for readability; fractions become strings
        if (s.find('/') == std::string::npos) {
            try {
                return static_cast<int64_t>(std::stoll(s));
            } catch (...) {
            }
        }
        return s;
    }
    static Rat decode(const ordered_json& j, const std::string& path) {
        if (j.is_number_integer()) return Rat::from_int(j.get<int64_t>());
        if (j.is_string()) {
            try {
                return Rat::from_string(j.get<std::string>());
            } catch (...) {
                throw fixture_error(path, "unparsable rational literal");
            }
        }
        throw fixture_error(path, "expected integer or rational string");
    }
    static ordered_json field_tag() { return "rational"; }
};

// Canonical fixture serialization: component coefficient lists are padded to
// exactly d+1 ascending entries and hypersurface terms follow the form's own
// sorted monomial order, so identical pairs serialize byte-identically.
template <class K>
ordered_json pair_to_json(const IncidentPair<K>& pair) {
    ordered_json j;
    j["p"] = FieldCodec<K>::field_tag();
    j["n"] = pair.n();
    j["d"] = pair.d();
    j["h"] = pair.h();
    ordered_json curve = ordered_json::array();
    for (const auto& comp : pair.curve.components) {
        ordered_json coeffs = ordered_json::array();
        for (int k = 0; k <= pair.d(); ++k) coeffs.push_back(FieldCodec<K>::encode(comp[k]));
        curve.push_back(std::move(coeffs));
    }
    j["curve"] = std::move(curve);
    ordered_json hyp = ordered_json::array();
    for (const auto& [e, v] : pair.hypersurface.terms()) {
        ordered_json term;
        term["exp"] = e;
        term["coeff"] = FieldCodec<K>::encode(v);
        hyp.push_back(std::move(term));
    }
    j["hypersurface"] = std::move(hyp);
    j["seed"] = pair.seed;
    j["flags"] = {{"basepoint_free", pair.basepoint_free},
                  {"birational", pair.birational},
                  {"smooth_along_curve", pair.smooth_along_curve},
                  {"curve_resamples", pair.curve_resamples},
                  {"pair_resamples", pair.pair_resamples}};
    return j;
}

template <class K>
IncidentPair<K> pair_from_json(const ordered_json& j) {
    auto need = [&](const char* key) -> const ordered_json& {
        if (!j.contains(key)) throw fixture_error(key, "missing");
        return j.at(key);
    };
    if (FieldCodec<K>::field_tag() != need("p"))
        throw fixture_error("p", "field tag does not match the active field");
    const int n = need("n").template get<int>();
    const int d = need("d").template get<int>();
    const int h = need("h").template get<int>();
    if (n < 1 || d < 1 || h < 1) throw fixture_error("n/d/h", "must be >= 1");

    const auto& curve = need("curve");
    if (!curve.is_array() || static_cast<int>(curve.size()) != n + 1)
        throw fixture_error("curve", "expected n+1 coefficient arrays");
    std::vector<UniPoly<K>> comps;
    for (int i = 0; i <= n; ++i) {
        const auto& arr = curve.at(i);
        if (!arr.is_array() || static_cast<int>(arr.size()) > d + 1)
            throw fixture_error("curve[" + std::to_string(i) + "]", "expected <= d+1 coefficients");
        std::vector<K> coeffs;
        for (size_t k = 0; k < arr.size(); ++k)
            coeffs.push_back(FieldCodec<K>::decode(
                arr.at(k), "curve[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        comps.emplace_back(std::move(coeffs));
    }

    IncidentPair<K> pair;
    pair.curve = CurveMap<K>(n, d, std::move(comps));
    pair.hypersurface = HomForm<K>(n, h);
    const auto& hyp = need("hypersurface");
    if (!hyp.is_array() || hyp.empty()) throw fixture_error("hypersurface", "expected a nonempty term array");
    for (size_t t = 0; t < hyp.size(); ++t) {
        const auto& term = hyp.at(t);
        const std::string path = "hypersurface[" + std::to_string(t) + "]";
        if (!term.contains("exp") || !term.contains("coeff"))
            throw fixture_error(path, "expected exp and coeff");
        Exponents e;
        for (const auto& x : term.at("exp")) e.push_back(x.template get<uint16_t>());
        try {
            pair.hypersurface.set_coeff(e, FieldCodec<K>::decode(term.at("coeff"), path + ".coeff"));
        } catch (const math_error& err) {
            throw fixture_error(path + ".exp", err.what());
        }
    }
    pair.seed = need("seed").template get<uint64_t>();
    if (j.contains("flags")) {
        const auto& f = j.at("flags");
        pair.basepoint_free = f.value("basepoint_free", false);
        pair.birational = f.value("birational", false);
        pair.smooth_along_curve = f.value("smooth_along_curve", false);
        pair.curve_resamples = f.value("curve_resamples", 0);
        pair.pair_resamples = f.value("pair_resamples", 0);
    }
    if (!pullback(pair.hypersurface, pair.curve).is_zero())
        throw fixture_error("hypersurface", "pullback along the curve is not zero");
    return pair;
}

}  // namespace curvelab

#endif
