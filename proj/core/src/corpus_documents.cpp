#include "factorlab/corpus_documents.hpp"

namespace factorlab::io {

namespace {

ojson expect(const std::string& task, std::optional<unsigned> order, const std::string& verdict,
             const std::string& source, bool extend = false, std::optional<unsigned> dimension = std::nullopt)
{
    ojson e{{"task", task}};
    if (order)
        e["order"] = *order;
    if (extend)
        e["extend"] = true;
    e["verdict"] = verdict;
    if (dimension)
        e["dimension"] = *dimension;
    e["source"] = source;
    return e;
}

template <Field K>
ojson skeleton(const std::string& id, const std::string& description, const Factorisation<K>& F)
{
    ojson j{{"format", "factorlab/1"}, {"id", id}, {"description", description}};
    const ojson body = factorisation_json(F);
    j["algebras"] = body.at("algebras");
    j["twist"] = body.at("twist");
    return j;
}

void set_caps(ojson& j, unsigned degree, unsigned output)
{
    j["caps"] = ojson{{"degree", degree}, {"output", output}};
}

CorpusEntry commutative_plane_entry()
{
    const std::string id = "commutative-plane";
    const std::string desc = "commutative plane k[a,abar] (x) k[b] with the flip twist; first and second order "
                             "terms with c = 0";
    auto j = skeleton(id, desc, commutative_plane_base<Rational>());
    const ojson c{{"c", "0"}};
    j["deformation"] = ojson{{"order", 2},
                             {"terms", ojson::array({formula_term(1, "plane-mu1"), formula_term(1, "plane-psi1"),
                                                     formula_term(2, "plane-mu2", c), formula_term(2, "plane-psi2", c)})}};
    set_caps(j, 3, 5);
    j["expected"] = ojson::array({expect("check-twist", std::nullopt, "PASS", "by-construction"),
                                  expect("check-deformation", 2, "PASS", "worked-example"),
                                  expect("obstruction", 2, "PASS", "worked-example"),
                                  expect("obstruction", 2, "PASS", "derived", true)});
    return {id, desc, std::move(j)};
}

CorpusEntry commutative_plane_closed_entry()
{
    const std::string id = "commutative-plane-closed";
    const std::string desc = "commutative plane with the closed-form deformation, q = 1 + t + (c + 1/2) t^2, c = 0";
    auto j = skeleton(id, desc, commutative_plane_base<Rational>());
    ojson terms = ojson::array();
    for (unsigned i = 1; i <= 3; ++i) {
        terms.push_back(formula_term(i, "plane-closed-mu", ojson{{"c", "0"}}));
        terms.push_back(formula_term(i, "plane-closed-psi", ojson{{"c", "0"}}));
    }
    j["deformation"] = ojson{{"order", 3}, {"terms", std::move(terms)}};
    set_caps(j, 3, 6);
    j["expected"] = ojson::array({expect("check-deformation", 3, "PASS", "worked-example")});
    return {id, desc, std::move(j)};
}

CorpusEntry flat_plane_entry()
{
    const std::string id = "commutative-plane-flat";
    const std::string desc = "commutative plane with every deformation term zero";
    auto j = skeleton(id, desc, commutative_plane_base<Rational>());
    j["deformation"] = ojson{{"order", 2}, {"terms", ojson::array()}};
    set_caps(j, 3, 5);
    j["expected"] = ojson::array({expect("check-deformation", 2, "PASS", "by-construction"),
                                  expect("obstruction", 3, "PASS", "by-construction")});
    return {id, desc, std::move(j)};
}

ojson quantum_plane_terms(unsigned keep)
{
    ojson terms = ojson::array();
    for (unsigned i = 1; i <= keep; ++i)
        terms.push_back(formula_term(i, "quantum-plane-psi", ojson{{"q", "q"}}));
    return terms;
}

CorpusEntry quantum_plane_entry()
{
    const std::string id = "quantum-plane";
    const std::string desc = "quantum plane k_q[a,abar] (x) k[b], twist-only deformation with formal q";
    auto j = skeleton(id, desc, quantum_plane_base<QRational>(QRational::q()));
    j["q"] = "formal";
    j["deformation"] = ojson{{"order", 3}, {"terms", quantum_plane_terms(3)}};
    set_caps(j, 3, 6);
    j["expected"] = ojson::array({expect("check-twist", std::nullopt, "PASS", "worked-example"),
                                  expect("check-deformation", 3, "PASS", "worked-example"),
                                  expect("obstruction", 2, "PASS", "derived")});
    return {id, desc, std::move(j)};
}

CorpusEntry truncated_quantum_plane_entry()
{
    const std::string id = "quantum-plane-truncated";
    const std::string desc = "quantum plane with the twist deformation cut off after first order";
    auto j = skeleton(id, desc, quantum_plane_base<QRational>(QRational::q()));
    j["q"] = "formal";
    j["deformation"] = ojson{{"order", 2}, {"terms", quantum_plane_terms(1)}};
    set_caps(j, 3, 6);
    j["expected"] = ojson::array({expect("check-deformation", 1, "PASS", "worked-example"),
                                  expect("check-deformation", 2, "FAIL", "derived")});
    return {id, desc, std::move(j)};
}

CorpusEntry quaternion_entry()
{
    const std::string id = "quaternions";
    const std::string desc = "quaternions as Q[i] (x) Q[j] with ij = -ji, deformed to ij + ji = t";
    auto j = skeleton(id, desc, quaternion_base<Rational>());
    j["deformation"] = ojson{{"order", 4}, {"terms", ojson::array({formula_term(1, "quaternion-psi1")})}};
    j["expected"] = ojson::array({expect("check-twist", std::nullopt, "PASS", "worked-example"),
                                  expect("check-deformation", 4, "PASS", "worked-example"),
                                  expect("obstruction", 2, "PASS", "derived"),
                                  expect("obstruction", 2, "PASS", "derived", true),
                                  expect("cohomology", 2, "PASS", "worked-example", false, 1u)});
    return {id, desc, std::move(j)};
}

CorpusEntry heisenberg_entry()
{
    const std::string id = "heisenberg";
    const std::string desc = "k[p] (x) k[x] with the canonical commutation twist px = xp + t";
    auto j = skeleton(id, desc, heisenberg_base<Rational>());
    ojson terms = ojson::array();
    for (unsigned i = 1; i <= 3; ++i)
        terms.push_back(formula_term(i, "heisenberg-psi"));
    j["deformation"] = ojson{{"order", 3}, {"terms", std::move(terms)}};
    set_caps(j, 4, 6);
    j["expected"] = ojson::array({expect("check-twist", std::nullopt, "PASS", "by-construction"),
                                  expect("check-deformation", 3, "PASS", "derived")});
    return {id, desc, std::move(j)};
}

} // namespace

const std::vector<CorpusEntry>& corpus_entries()
{
    static const std::vector<CorpusEntry> entries = {
        commutative_plane_entry(), commutative_plane_closed_entry(), flat_plane_entry(), quantum_plane_entry(),
        truncated_quantum_plane_entry(), quaternion_entry(), heisenberg_entry(),
    };
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& id)
{
    for (const auto& e : corpus_entries())
        if (e.id == id)
            return e;
    throw InputError("unknown corpus id '" + id + "'");
}

} // namespace factorlab::io
