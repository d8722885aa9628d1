#pragma once

/**
 * @file document.hpp
 * @brief JSON input documents: schema validation, typed construction of
 * factorisations and deformations, and export back to JSON.
 *
 * Scalars are always strings. Every scalar is read as an element of Q(q);
 * the q setting then decides the working field (formal q keeps Q(q), a
 * rational value substitutes it, no setting demands constants).
 */

#include "factorlab/corpus.hpp"

#include <nlohmann/json.hpp>

namespace factorlab::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The published JSON schema for input documents.
const std::string& input_schema();

/// Throws InputError naming the offending location on any schema violation.
void validate(const json& doc);

/// Parses text and validates it.
json parse_document(std::string_view text);

struct QSetting {
    bool formal = false;
    std::optional<Rational> value;

    /// Flag value ("formal" or a rational) overrides the document's "q".
    static QSetting resolve(const json& doc, const std::optional<std::string>& flag);
    std::string str() const { return formal ? "formal" : value ? value->str() : "none"; }
};

template <Field K>
K read_scalar(const json& s, const QSetting& q)
{
    const std::string text = s.get<std::string>();
    QRational v;
    try {
        v = QRational::parse(text);
    } catch (const std::exception& e) {
        throw InputError("bad scalar \"" + text + "\": " + e.what());
    }
    if constexpr (std::is_same_v<K, QRational>) {
        return v;
    } else {
        if (q.value) {
            try {
                return v.evaluate(*q.value);
            } catch (const std::exception& e) {
                throw InputError("scalar \"" + text + "\" at q = " + q.value->str() + ": " + e.what());
            }
        }
        if (!v.is_constant())
            throw InputError("scalar \"" + text + "\" depends on q; pass --q formal or --q VALUE");
        return v.constant();
    }
}

namespace detail {

inline Monomial read_monomial(const json& j, const std::string& where)
{
    std::vector<unsigned> e;
    for (const auto& x : j)
        e.push_back(x.get<unsigned>());
    if (e.size() > kMaxGenerators)
        throw InputError(where + ": too many exponents");
    return Monomial(std::span<const unsigned>(e));
}

template <Field K>
Monomial read_basis(const json& j, const BasedAlgebra<K>& alg, const std::string& where)
{
    const Monomial m = read_monomial(j, where);
    if (!alg.contains(m))
        throw InputError(where + ": " + j.dump() + " is not a basis index of " + alg.name());
    return m;
}

template <Field K>
Element<K> read_element(const json& j, const BasedAlgebra<K>& alg, const QSetting& q, const std::string& where)
{
    Element<K> e;
    for (const auto& t : j) {
        if (!t.contains("monomial"))
            throw InputError(where + ": expected an algebra element (monomial, coeff)");
        e.add(read_basis(t.at("monomial"), alg, where), read_scalar<K>(t.at("coeff"), q));
    }
    return e;
}

template <Field K>
XElement<K> read_tensor(const json& j, const BasedAlgebra<K>& A, const BasedAlgebra<K>& B, const QSetting& q,
                        const std::string& where)
{
    XElement<K> x;
    for (const auto& t : j) {
        if (!t.contains("b"))
            throw InputError(where + ": expected a tensor element (b, a, coeff)");
        x.add({read_basis(t.at("b"), B, where), read_basis(t.at("a"), A, where)}, read_scalar<K>(t.at("coeff"), q));
    }
    return x;
}

template <Field K>
AlgebraPtr<K> read_algebra(const json& j, const QSetting& q, const std::string& where)
{
    const auto family = j.at("family").get<std::string>();
    const auto gens = j.at("generators").get<std::vector<std::string>>();
    const std::string name = j.value("name", "");
    const bool has_q = j.contains("parameters") && j.at("parameters").contains("q");
    if (family != "qplane" && has_q)
        throw InputError(where + ": parameter q only applies to the qplane family");
    if (family != "table" && j.contains("table"))
        throw InputError(where + ": only the table family takes a table");
    try {
        if (family == "commutative")
            return commutative_poly<K>(gens, name);
        if (family == "qplane") {
            if (!has_q)
                throw InputError(where + ": qplane needs parameters.q");
            if (gens.size() != 2)
                throw InputError(where + ": qplane needs exactly two generators");
            return q_plane<K>(read_scalar<K>(j.at("parameters").at("q"), q), name, gens);
        }
        // table: generators label the basis, table[i][j] = e_i e_j
        if (!j.contains("table"))
            throw InputError(where + ": table family needs a table");
        const std::size_t dim = gens.size();
        std::vector<std::vector<Element<K>>> table;
        for (const auto& row : j.at("table")) {
            std::vector<Element<K>> r;
            for (const auto& e : row) {
                Element<K> x;
                for (const auto& t : e) {
                    const Monomial m = read_monomial(t.at("monomial"), where);
                    if (m.size() != 1 || m[0] >= dim)
                        throw InputError(where + ": table entry " + t.at("monomial").dump() + " outside the basis");
                    x.add(m, read_scalar<K>(t.at("coeff"), q));
                }
                r.push_back(std::move(x));
            }
            table.push_back(std::move(r));
        }
        return table_algebra<K>(gens, std::move(table), name);
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    } catch (const std::length_error& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline Rational constant_param(const json& params, const std::string& key, const std::string& formula,
                               std::optional<Rational> fallback = std::nullopt)
{
    if (!params.contains(key)) {
        if (fallback)
            return *fallback;
        throw InputError("formula " + formula + " needs parameter " + key);
    }
    return read_scalar<Rational>(params.at(key), QSetting{});
}

} // namespace detail

/// Named deformation-term formulas usable in documents: name -> component.
inline const std::map<std::string, std::string>& formula_components()
{
    static const std::map<std::string, std::string> m = {
        {"plane-mu1", "mu_A"},        {"plane-psi1", "psi"},       {"plane-mu2", "mu_A"},
        {"plane-psi2", "psi"},        {"plane-closed-mu", "mu_A"}, {"plane-closed-psi", "psi"},
        {"quantum-plane-psi", "psi"}, {"quaternion-psi1", "psi"},  {"heisenberg-psi", "psi"},
    };
    return m;
}

template <Field K>
Cochain<K> formula_cochain(const std::string& name, const json& params, const Factorisation<K>& F, unsigned order,
                           const QSetting& q)
{
    namespace f = formulas;
    auto allow = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params.items())
            if (std::find_if(keys.begin(), keys.end(), [&](const char* s) { return k == s; }) == keys.end())
                throw InputError("formula " + name + " has no parameter " + k);
    };
    if (name == "plane-mu1" || name == "plane-psi1" || name == "quaternion-psi1" || name == "heisenberg-psi") {
        allow({});
        if (name == "plane-mu1")
            return f::plane_mu1(F);
        if (name == "plane-psi1")
            return f::plane_psi1(F);
        if (name == "quaternion-psi1")
            return f::quaternion_psi1(F);
        return f::heisenberg_psi(F, order);
    }
    if (name == "quantum-plane-psi") {
        allow({"q"});
        if (!params.contains("q"))
            throw InputError("formula quantum-plane-psi needs parameter q");
        return f::quantum_plane_psi(F, read_scalar<K>(params.at("q"), q), order);
    }
    allow({"c"});
    const Rational c = detail::constant_param(params, "c", name);
    if (name == "plane-mu2")
        return f::plane_mu2(F, c);
    if (name == "plane-psi2")
        return f::plane_psi2(F, c);
    if (name == "plane-closed-mu")
        return f::plane_closed_mu(F, c, order);
    if (name == "plane-closed-psi")
        return f::plane_closed_psi(F, c, order);
    throw InputError("unknown formula '" + name + "'");
}

template <Field K>
struct Model {
    Factorisation<K> base;
    std::optional<DeformationData<K>> deformation;
};

template <Field K>
Factorisation<K> read_factorisation(const json& doc, const QSetting& q)
{
    const auto A = detail::read_algebra<K>(doc.at("algebras").at("A"), q, "algebras.A");
    const auto B = detail::read_algebra<K>(doc.at("algebras").at("B"), q, "algebras.B");
    const auto& tw = doc.at("twist");
    std::vector<GeneratorRule<K>> rules;
    if (tw.contains("corpus")) {
        try {
            rules = corpus_twist_rules<K>(tw.at("corpus").get<std::string>(), *A, *B);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("twist: ") + e.what());
        }
    } else {
        std::size_t i = 0;
        for (const auto& r : tw.at("rules")) {
            const std::string where = "twist.rules[" + std::to_string(i++) + "]";
            rules.push_back({detail::read_basis(r.at("a_gen"), *A, where), detail::read_basis(r.at("b_gen"), *B, where),
                             detail::read_tensor<K>(r.at("value"), *A, *B, q, where)});
        }
    }
    // AmbiguousExtensionError is a verdict on the rules, not an input error
    auto psi = extend_from_generators<K>(A, B, std::move(rules));
    return Factorisation<K>(A, B, std::move(psi));
}

template <Field K>
Model<K> build(const json& doc, const QSetting& q)
{
    Model<K> model{read_factorisation<K>(doc, q), std::nullopt};
    if (!doc.contains("deformation"))
        return model;
    const auto& dj = doc.at("deformation");
    DeformationData<K> def(model.base, dj.at("order").get<unsigned>());
    const auto& F = def.base();
    std::set<std::pair<unsigned, std::string>> seen;
    std::size_t idx = 0;
    for (const auto& t : dj.at("terms")) {
        const std::string where = "deformation.terms[" + std::to_string(idx++) + "]";
        const unsigned i = t.at("order").get<unsigned>();
        const std::string comp = t.at("component").get<std::string>();
        if (i > def.order())
            throw InputError(where + ": order " + std::to_string(i) + " exceeds the deformation order");
        if (!seen.insert({i, comp}).second)
            throw InputError(where + ": duplicate term " + comp + " at order " + std::to_string(i));
        const BiDegree deg = comp == "mu_A" ? BiDegree{2, 0} : comp == "psi" ? BiDegree{1, 1} : BiDegree{0, 2};
        Cochain<K> c;
        if (t.contains("formula")) {
            const auto& fj = t.at("formula");
            const std::string name = fj.at("name").get<std::string>();
            const auto it = formula_components().find(name);
            if (it == formula_components().end())
                throw InputError(where + ": unknown formula '" + name + "'");
            if (it->second != comp)
                throw InputError(where + ": formula " + name + " is a " + it->second + " term, not " + comp);
            if (t.contains("domain_degree"))
                throw InputError(where + ": domain_degree only applies to entries");
            c = formula_cochain<K>(name, fj.value("params", json::object()), F, i, q);
        } else {
            std::map<MonoTuple, XElement<K>> values;
            std::size_t e = 0;
            for (const auto& entry : t.at("entries")) {
                const std::string ew = where + ".entries[" + std::to_string(e++) + "]";
                const auto& args = entry.at("args");
                if (args.size() != deg.total())
                    throw InputError(ew + ": " + comp + " takes " + std::to_string(deg.total()) + " arguments");
                MonoTuple key;
                for (std::size_t s = 0; s < args.size(); ++s)
                    key.push_back(detail::read_basis(args[s], s < deg.m ? F.A() : F.B(), ew));
                XElement<K> v;
                if (comp == "psi")
                    v = detail::read_tensor<K>(entry.at("value"), F.A(), F.B(), q, ew);
                else if (comp == "mu_A")
                    v = tensor(Element<K>(F.B().unit(), K(1)), detail::read_element<K>(entry.at("value"), F.A(), q, ew));
                else
                    v = tensor(detail::read_element<K>(entry.at("value"), F.B(), q, ew), Element<K>(F.A().unit(), K(1)));
                if (!values.emplace(std::move(key), std::move(v)).second)
                    throw InputError(ew + ": repeated argument tuple");
            }
            std::optional<unsigned> dd;
            if (t.contains("domain_degree"))
                dd = t.at("domain_degree").get<unsigned>();
            c = table_cochain<K>(F, deg, std::move(values), dd);
        }
        if (comp == "mu_A")
            def.set_mu_A(i, c);
        else if (comp == "psi")
            def.set_psi(i, c);
        else
            def.set_mu_B(i, c);
    }
    model.deformation = std::move(def);
    return model;
}

// Export

inline ojson monomial_json(const Monomial& m)
{
    ojson j = ojson::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        j.push_back(m[i]);
    return j;
}

template <Scalar S>
ojson element_json(const Element<S>& e)
{
    ojson j = ojson::array();
    for (const auto& [m, c] : e)
        j.push_back(ojson{{"monomial", monomial_json(m)}, {"coeff", c.str()}});
    return j;
}

template <Scalar S>
ojson tensor_json(const XElement<S>& x)
{
    ojson j = ojson::array();
    for (const auto& [k, c] : x)
        j.push_back(ojson{{"b", monomial_json(k.first)}, {"a", monomial_json(k.second)}, {"coeff", c.str()}});
    return j;
}

template <Scalar S>
ojson algebra_json(const BasedAlgebra<S>& alg)
{
    using F = typename BasedAlgebra<S>::Family;
    ojson j;
    j["name"] = alg.name();
    switch (alg.family()) {
    case F::CommutativePoly:
        j["family"] = "commutative";
        break;
    case F::QPlane:
        j["family"] = "qplane";
        break;
    case F::Table:
        j["family"] = "table";
        break;
    case F::Custom:
        throw std::invalid_argument("algebra " + alg.name() + " has no serialisable family");
    }
    j["generators"] = alg.labels();
    if (alg.family() == F::QPlane)
        j["parameters"] = ojson{{"q", alg.parameters().at("q")}};
    if (alg.family() == F::Table) {
        ojson t = ojson::array();
        for (const auto& row : alg.table()) {
            ojson r = ojson::array();
            for (const auto& e : row)
                r.push_back(element_json(e));
            t.push_back(std::move(r));
        }
        j["table"] = std::move(t);
    }
    return j;
}

template <Scalar S>
ojson rules_json(const TwistMap<S>& psi)
{
    if (psi.generator_rules().empty())
        throw std::invalid_argument("twist was not built from generator rules");
    ojson rules = ojson::array();
    for (const auto& r : psi.generator_rules())
        rules.push_back(ojson{{"a_gen", monomial_json(r.a_gen)}, {"b_gen", monomial_json(r.b_gen)}, {"value", tensor_json(r.value)}});
    return ojson{{"rules", std::move(rules)}};
}

/// Document skeleton for a factorisation (format, algebras, twist rules).
template <Scalar S>
ojson factorisation_json(const Factorisation<S>& F)
{
    ojson j;
    j["format"] = "factorlab/1";
    j["algebras"] = ojson{{"A", algebra_json(F.A())}, {"B", algebra_json(F.B())}};
    j["twist"] = rules_json(F.psi());
    return j;
}

inline ojson formula_term(unsigned order, const std::string& name, ojson params = ojson::object())
{
    ojson f{{"name", name}};
    if (!params.empty())
        f["params"] = std::move(params);
    return ojson{{"order", order}, {"component", formula_components().at(name)}, {"formula", std::move(f)}};
}

/// Finite table of a cochain's values on inputs of degree <= bound, as a
/// document term with domain_degree = bound.
template <Field K>
ojson tabulated_term(const Factorisation<K>& F, const Cochain<K>& c, unsigned order, unsigned bound)
{
    const BiDegree deg = c.bidegree();
    const std::string comp = deg == BiDegree{2, 0} ? "mu_A" : deg == BiDegree{1, 1} ? "psi" : "mu_B";
    ojson entries = ojson::array();
    for_each_tuple<K>(argument_slots(F, deg), bound, [&](const MonoTuple& t) {
        const auto v = c(t);
        if (v.is_zero())
            return;
        ojson args = ojson::array();
        for (const auto& m : t)
            args.push_back(monomial_json(m));
        ojson value;
        if (comp == "psi")
            value = tensor_json(v);
        else if (comp == "mu_A")
            value = element_json(::factorlab::detail::a_part(v, F.B().unit()));
        else
            value = element_json(::factorlab::detail::b_part(v, F.A().unit()));
        entries.push_back(ojson{{"args", std::move(args)}, {"value", std::move(value)}});
    });
    return ojson{{"order", order}, {"component", comp}, {"entries", std::move(entries)}, {"domain_degree", bound}};
}

} // namespace factorlab::io
