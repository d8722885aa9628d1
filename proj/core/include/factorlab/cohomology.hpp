#pragma once

/**
 * @file cohomology.hpp
 * @brief Exact matrices of D in the delta-cochain basis, elimination, and solves.
 *
 * A column is a delta cochain: value 1 * (b (x) a) at one argument tuple and
 * zero elsewhere. Finite factorisations are enumerated completely. For
 * infinite ones a Caps pair bounds the input-tuple degree and the degree of
 * output monomials; a row of D is kept only if every column it involves is
 * enumerated, so a capped system is a union of complete equations. When the
 * base maps are graded (products add degree, the twist preserves it) every
 * kept row is complete and an inconsistency of the capped system is an
 * inconsistency of the full one.
 */

#include "factorlab/complex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

namespace factorlab {

struct MissingCapsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotACocycleError : std::runtime_error {
    NotACocycleError(const std::string& what, Witness w) : std::runtime_error(what), witness(std::move(w)) {}
    Witness witness;
};

template <Scalar K>
using SparseRow = std::vector<std::pair<std::size_t, K>>;

template <Field K>
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    static ExactMatrix from_dense(const std::vector<std::vector<K>>& d)
    {
        ExactMatrix m(d.size(), d.empty() ? 0 : d[0].size());
        for (std::size_t r = 0; r < d.size(); ++r)
            for (std::size_t c = 0; c < d[r].size(); ++c)
                m.add(r, c, d[r][c]);
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t add_row()
    {
        rows_.emplace_back();
        return rows_.size() - 1;
    }
    void add(std::size_t r, std::size_t c, const K& v)
    {
        if (r >= rows_.size() || c >= cols_)
            throw std::out_of_range("ExactMatrix: index out of range");
        if (v.is_zero())
            return;
        auto [it, inserted] = rows_[r].try_emplace(c, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero())
                rows_[r].erase(it);
        }
    }
    K get(std::size_t r, std::size_t c) const
    {
        auto it = rows_.at(r).find(c);
        return it == rows_[r].end() ? K(0) : it->second;
    }
    const std::map<std::size_t, K>& row(std::size_t r) const { return rows_.at(r); }
    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& r : rows_)
            n += r.size();
        return n;
    }

    SparseRow<K> sparse_row(std::size_t r) const { return {rows_.at(r).begin(), rows_.at(r).end()}; }

    /// M x for x given densely.
    std::vector<K> apply(const std::vector<K>& x) const
    {
        std::vector<K> y(rows_.size(), K(0));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r])
                y[r] += v * x.at(c);
        return y;
    }

private:
    std::size_t cols_ = 0;
    std::vector<std::map<std::size_t, K>> rows_;
};

namespace detail {

/// Scales a row to a canonical multiple. Over Q rows become primitive integer
/// vectors with positive leading entry, which keeps elimination fraction free;
/// elsewhere the leading entry becomes 1.
template <Field K>
void normalize_row(SparseRow<K>& row)
{
    if (row.empty())
        return;
    if constexpr (std::is_same_v<K, Rational>) {
        mpz_class den = 1, num = 0;
        for (const auto& [c, v] : row)
            den = den / gcd(den, v.denominator()) * v.denominator();
        for (const auto& [c, v] : row)
            num = gcd(num, v.numerator() * (den / v.denominator()));
        mpq_class scale(den, num);
        if (row.front().second.sign() < 0)
            scale = -scale;
        scale.canonicalize();
        const Rational s(scale);
        for (auto& [c, v] : row)
            v = v * s;
    } else {
        const K inv = K(1) / row.front().second;
        for (auto& [c, v] : row)
            v = v * inv;
    }
}

/// p * r - s * P, merged by column.
template <Field K>
SparseRow<K> combine(const K& p, const SparseRow<K>& r, const K& s, const SparseRow<K>& P)
{
    SparseRow<K> out;
    out.reserve(r.size() + P.size());
    auto i = r.begin();
    auto j = P.begin();
    while (i != r.end() || j != P.end()) {
        if (j == P.end() || (i != r.end() && i->first < j->first)) {
            K v = p * i->second;
            if (!v.is_zero())
                out.emplace_back(i->first, std::move(v));
            ++i;
        } else if (i == r.end() || j->first < i->first) {
            K v = -(s * j->second);
            if (!v.is_zero())
                out.emplace_back(j->first, std::move(v));
            ++j;
        } else {
            K v = p * i->second - s * j->second;
            if (!v.is_zero())
                out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <Field K>
const K* find_entry(const SparseRow<K>& row, std::size_t col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

} // namespace detail

/// Row echelon form built one row at a time.
template <Field K>
class Echelon {
public:
    explicit Echelon(std::size_t cols) : cols_(cols) {}

    /// Reduces `row` against the current pivots; keeps it if independent.
    bool insert(SparseRow<K> row)
    {
        row = reduce(std::move(row));
        if (row.empty())
            return false;
        detail::normalize_row(row);
        const std::size_t lead = row.front().first;
        pivots_.emplace(lead, std::move(row));
        reduced_ = false;
        return true;
    }

    /// Eliminates all pivot columns from `row`.
    SparseRow<K> reduce(SparseRow<K> row) const
    {
        std::size_t from = 0;
        while (true) {
            auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) {
                return e.first >= from && pivots_.count(e.first);
            });
            if (it == row.end())
                return row;
            const std::size_t col = it->first;
            const SparseRow<K>& P = pivots_.at(col);
            const K s = it->second;
            row = detail::combine(P.front().second, row, s, P);
            detail::normalize_row(row);
            from = col + 1;
        }
    }

    /// Back substitution: afterwards no pivot row has an entry in another pivot column.
    void make_reduced()
    {
        if (reduced_)
            return;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const std::size_t col = it->first;
            const SparseRow<K>& P = it->second;
            for (auto& [other_col, R] : pivots_) {
                if (other_col >= col)
                    break;
                if (const K* s = detail::find_entry(R, col)) {
                    const K sv = *s;
                    R = detail::combine(P.front().second, R, sv, P);
                    detail::normalize_row(R);
                }
            }
        }
        reduced_ = true;
    }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }
    const std::map<std::size_t, SparseRow<K>>& pivots() const { return pivots_; }

    /// Kernel basis of the reduced system: one vector per free column.
    std::vector<SparseRow<K>> kernel(std::size_t ncols)
    {
        make_reduced();
        std::map<std::size_t, std::vector<std::pair<std::size_t, K>>> by_free;
        for (const auto& [lead, R] : pivots_) {
            const K& p = R.front().second;
            for (std::size_t i = 1; i < R.size(); ++i)
                if (R[i].first < ncols)
                    by_free[R[i].first].emplace_back(lead, -(R[i].second / p));
        }
        std::vector<SparseRow<K>> out;
        for (std::size_t f = 0; f < ncols; ++f) {
            if (pivots_.count(f))
                continue;
            SparseRow<K> v;
            if (auto it = by_free.find(f); it != by_free.end())
                v = it->second;
            v.emplace_back(f, K(1));
            std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    std::size_t cols_;
    std::map<std::size_t, SparseRow<K>> pivots_;
    bool reduced_ = true;
};

template <Field K>
struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    std::vector<SparseRow<K>> kernel;
};

template <Field K>
RankKernel<K> rank_and_kernel(const ExactMatrix<K>& M, bool want_kernel = true)
{
    Echelon<K> e(M.cols());
    for (std::size_t r = 0; r < M.rows(); ++r)
        e.insert(M.sparse_row(r));
    RankKernel<K> out;
    out.rank = e.rank();
    for (const auto& [c, row] : e.pivots())
        out.pivot_columns.push_back(c);
    if (want_kernel)
        out.kernel = e.kernel(M.cols());
    return out;
}

template <Field K>
struct LinearSolve {
    bool consistent = false;
    std::size_t rank = 0;
    SparseRow<K> particular;
    std::vector<SparseRow<K>> kernel;
    /// Row of M whose equation could not be met (when inconsistent).
    std::optional<std::size_t> witness_row;
};

/// Solves M x = b exactly; b is indexed by row.
template <Field K>
LinearSolve<K> solve(const ExactMatrix<K>& M, const std::vector<K>& b, bool want_kernel = true)
{
    if (b.size() != M.rows())
        throw std::invalid_argument("solve: right-hand side has wrong length");
    const std::size_t aug = M.cols();
    Echelon<K> e(aug + 1);
    LinearSolve<K> out;
    for (std::size_t r = 0; r < M.rows(); ++r) {
        SparseRow<K> row = M.sparse_row(r);
        if (!b[r].is_zero())
            row.emplace_back(aug, b[r]);
        const bool added = e.insert(std::move(row));
        if (added && e.pivots().count(aug)) {
            out.consistent = false;
            out.witness_row = r;
            out.rank = e.rank() - 1;
            return out;
        }
    }
    out.consistent = true;
    out.rank = e.rank();
    e.make_reduced();
    for (const auto& [lead, R] : e.pivots())
        if (const K* v = detail::find_entry(R, aug))
            out.particular.emplace_back(lead, *v / R.front().second);
    if (want_kernel)
        out.kernel = e.kernel(aug);
    return out;
}

/// Degree caps for infinite-dimensional algebras: input tuples of degree <=
/// input, output monomials b (x) a with deg b + deg a <= output.
struct Caps {
    unsigned input = 0;
    unsigned output = 0;
};

/// Delta cochain coordinate: bidegree, argument tuple and output basis element.
struct CochainBasisIndex {
    BiDegree deg;
    MonoTuple input;
    MonoPair output;
    friend auto operator<=>(const CochainBasisIndex&, const CochainBasisIndex&) = default;
    friend bool operator==(const CochainBasisIndex&, const CochainBasisIndex&) = default;
};

namespace detail {

template <Scalar S>
unsigned counted_degree(const BasedAlgebra<S>& alg, const Monomial& m)
{
    return alg.finite() ? 0 : alg.degree(m);
}

template <Scalar S>
unsigned output_degree(const Factorisation<S>& fac, const MonoPair& out)
{
    return counted_degree(fac.B(), out.first) + counted_degree(fac.A(), out.second);
}

template <Scalar S>
unsigned tuple_degree(const Factorisation<S>& fac, BiDegree deg, const MonoTuple& t)
{
    unsigned d = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        d += counted_degree(i < deg.m ? fac.A() : fac.B(), t[i]);
    return d;
}

/// Basis up to a degree cap; finite algebras always contribute every slot.
template <Scalar S>
std::vector<Monomial> basis_within(const BasedAlgebra<S>& alg, unsigned cap)
{
    return alg.basis_up_to(alg.finite() ? std::max(cap, 1u) : cap);
}

template <Scalar S>
std::vector<MonoPair> outputs_for(const Factorisation<S>& fac, BiDegree deg, unsigned out_cap)
{
    std::vector<MonoPair> outs;
    const auto as = basis_within(fac.A(), out_cap);
    const auto bs = basis_within(fac.B(), out_cap);
    if (deg.n == 0) {
        for (const auto& a : as)
            outs.emplace_back(fac.B().unit(), a);
    } else if (deg.m == 0) {
        for (const auto& b : bs)
            outs.emplace_back(b, fac.A().unit());
    } else {
        for (const auto& b : bs)
            for (const auto& a : as)
                if (output_degree(fac, MonoPair{b, a}) <= out_cap)
                    outs.emplace_back(b, a);
    }
    return outs;
}

} // namespace detail

template <Scalar S>
std::optional<Caps> effective_caps(const Factorisation<S>& fac, std::optional<Caps> caps)
{
    if (fac.finite())
        return std::nullopt;
    if (!caps)
        throw MissingCapsError("degree caps are required for infinite-dimensional algebras");
    return caps;
}

/// Delta basis of C^k in deterministic order (within caps when infinite).
template <Scalar S>
std::vector<CochainBasisIndex> cochain_basis(const Factorisation<S>& fac, unsigned k,
                                             std::optional<Caps> caps = std::nullopt)
{
    if (k == 0)
        throw std::invalid_argument("cochain_basis: degree 0 is not part of the complex");
    const auto c = effective_caps(fac, caps);
    const unsigned in_cap = c ? c->input : 0;
    const unsigned out_cap = c ? c->output : 0;
    std::vector<CochainBasisIndex> basis;
    for (unsigned m = k + 1; m-- > 0;) {
        const BiDegree deg{m, k - m};
        const auto outs = detail::outputs_for(fac, deg, out_cap);
        for_each_tuple<S>(argument_slots(fac, deg), in_cap, [&](const MonoTuple& t) {
            for (const auto& o : outs)
                basis.push_back({deg, t, o});
        });
    }
    return basis;
}

/// True when both products add degree and the twist preserves it on all
/// inputs of degree <= bound.
template <Scalar S>
bool is_graded(const Factorisation<S>& fac, unsigned bound)
{
    if (fac.finite())
        return true;
    auto graded_alg = [&](const BasedAlgebra<S>& alg) {
        for (const auto& x : alg.basis_up_to(bound))
            for (const auto& y : alg.basis_up_to(bound - std::min(bound, detail::counted_degree(alg, x))))
                for (const auto& [m, c] : alg.basis_product(x, y))
                    if (detail::counted_degree(alg, m) !=
                        detail::counted_degree(alg, x) + detail::counted_degree(alg, y))
                        return false;
        return true;
    };
    if (!graded_alg(fac.A()) || !graded_alg(fac.B()))
        return false;
    bool ok = true;
    for_each_tuple<S>({&fac.A(), &fac.B()}, bound, [&](const MonoTuple& t) {
        const unsigned d = detail::counted_degree(fac.A(), t[0]) + detail::counted_degree(fac.B(), t[1]);
        for (const auto& [k, c] : fac.psi()(t[0], t[1]))
            if (detail::output_degree(fac, k) != d)
                ok = false;
    });
    return ok;
}

/// Matrix of D : C^k -> C^{k+1} in the delta bases.
template <Field K>
struct DAssembly {
    unsigned k = 0;
    std::optional<Caps> caps;
    bool graded = true;
    std::vector<CochainBasisIndex> columns;
    std::vector<CochainBasisIndex> rows;
    std::map<CochainBasisIndex, std::size_t> column_index;
    std::map<CochainBasisIndex, std::size_t> row_index;
    /// Argument tuples of C^{k+1} whose equations are complete.
    std::vector<std::pair<BiDegree, MonoTuple>> row_tuples;
    /// Rows whose output lies past the output cap. Columns beyond the cap
    /// could also reach them, so they are not equations of the full system;
    /// a solution is accepted only if it also vanishes there.
    std::vector<CochainBasisIndex> overflow_rows;
    std::map<CochainBasisIndex, std::size_t> overflow_index;
    ExactMatrix<K> overflow;
    std::size_t dropped_tuples = 0;
    ExactMatrix<K> matrix;

    std::size_t ensure_row(const CochainBasisIndex& key)
    {
        auto [it, inserted] = row_index.try_emplace(key, rows.size());
        if (inserted) {
            rows.push_back(key);
            matrix.add_row();
        }
        return it->second;
    }
};

namespace detail {

template <Scalar S>
Cochain<S> apply_D_component(const Factorisation<S>& fac, BiDegree source, BiDegree target,
                             const Cochain<S>& f)
{
    if (target.m == source.m + 1)
        return d_A(fac, f);
    return d_B(fac, f).scaled(sign_of<S>(source.m));
}

} // namespace detail

template <Field K>
DAssembly<K> assemble_D(const Factorisation<K>& fac, unsigned k, std::optional<Caps> caps = std::nullopt)
{
    DAssembly<K> as;
    as.k = k;
    as.caps = effective_caps(fac, caps);
    as.graded = as.caps ? is_graded(fac, as.caps->input + 1) : true;
    as.columns = cochain_basis(fac, k, as.caps);
    for (std::size_t i = 0; i < as.columns.size(); ++i)
        as.column_index.emplace(as.columns[i], i);
    as.matrix = ExactMatrix<K>(0, as.columns.size());
    as.overflow = ExactMatrix<K>(0, as.columns.size());
    if (!as.caps)
        for (const auto& r : cochain_basis(fac, k + 1))
            as.ensure_row(r);

    const unsigned in_cap = as.caps ? as.caps->input : 0;
    const unsigned out_cap = as.caps ? as.caps->output : 0;
    std::map<BiDegree, std::vector<MonoPair>> outs;
    for (unsigned m = 0; m <= k; ++m)
        outs[{m, k - m}] = detail::outputs_for(fac, {m, k - m}, out_cap);

    for (unsigned mt = k + 2; mt-- > 0;) {
        const BiDegree target{mt, k + 1 - mt};
        std::vector<BiDegree> sources;
        if (target.m >= 1)
            sources.push_back({target.m - 1, target.n});
        if (target.n >= 1)
            sources.push_back({target.m, target.n - 1});
        for_each_tuple<K>(argument_slots(fac, target), in_cap, [&](const MonoTuple& t) {
            std::map<MonoPair, std::map<std::size_t, K>> entries;
            for (const auto& src : sources) {
                auto op = [&](const Cochain<K>& f) { return detail::apply_D_component(fac, src, target, f); };
                const auto queried = trace_queries<K>(src, op, t);
                for (const auto& q : queried)
                    if (as.caps && detail::tuple_degree(fac, src, q) > in_cap) {
                        ++as.dropped_tuples;
                        return;
                    }
                for (const auto& q : queried)
                    for (const auto& o : outs[src]) {
                        auto it = as.column_index.find(CochainBasisIndex{src, q, o});
                        if (it == as.column_index.end())
                            continue;
                        const auto delta = delta_cochain<K>(src, q, o);
                        for (const auto& [key, c] : op(delta)(t))
                            entries[key][it->second] += c;
                    }
            }
            as.row_tuples.emplace_back(target, t);
            for (auto& [key, cols] : entries) {
                const CochainBasisIndex rk{target, t, key};
                if (as.caps && detail::output_degree(fac, key) > out_cap) {
                    auto [it, inserted] = as.overflow_index.try_emplace(rk, as.overflow_rows.size());
                    if (inserted) {
                        as.overflow_rows.push_back(rk);
                        as.overflow.add_row();
                    }
                    for (const auto& [c, v] : cols)
                        as.overflow.add(it->second, c, v);
                    continue;
                }
                const std::size_t r = as.ensure_row(rk);
                for (const auto& [c, v] : cols)
                    as.matrix.add(r, c, v);
            }
        });
    }
    return as;
}

/// Coordinates of a cochain of degree k on the given delta basis.
template <Scalar S>
std::vector<S> coordinates(const std::vector<CochainBasisIndex>& basis, const TotalCochain<S>& c)
{
    std::vector<S> v(basis.size(), S(0));
    std::map<std::pair<unsigned, MonoTuple>, XElement<S>> cache;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& b = basis[i];
        auto key = std::make_pair(b.deg.m, b.input);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, c.component(b.deg.m)(b.input)).first;
        v[i] = it->second.coeff(b.output);
    }
    return v;
}

/// Total cochain with the given coordinates; tuples outside the basis read
/// as zero, or raise CapEscapeError beyond `domain_degree`.
template <Scalar S>
TotalCochain<S> from_coordinates(const Factorisation<S>& fac, unsigned k,
                                 const std::vector<CochainBasisIndex>& basis, const SparseRow<S>& x,
                                 std::optional<unsigned> domain_degree = std::nullopt)
{
    std::map<unsigned, std::map<MonoTuple, XElement<S>>> tables;
    for (unsigned m = 0; m <= k; ++m)
        tables[m];
    for (const auto& [i, v] : x) {
        const auto& b = basis.at(i);
        tables[b.deg.m][b.input].add(b.output, v);
    }
    TotalCochain<S> c(k);
    for (auto& [m, t] : tables)
        c.set(table_cochain(fac, {m, k - m}, std::move(t), domain_degree));
    return c;
}

template <Scalar S>
std::string describe(const Factorisation<S>& fac, const CochainBasisIndex& idx)
{
    std::string s = idx.deg.str() + " f(";
    for (std::size_t i = 0; i < idx.input.size(); ++i) {
        if (i)
            s += ", ";
        s += i < idx.deg.m ? fac.A().format(idx.input[i]) : fac.B().format(idx.input[i]);
    }
    return s + ") -> " + fac.B().format(idx.output.first) + "(x)" + fac.A().format(idx.output.second);
}

enum class SolveStatus { Solved, Inconsistent, Inconclusive };

template <Field K>
struct CoboundarySolve {
    SolveStatus status = SolveStatus::Inconclusive;
    std::string reason;
    /// x with D x = rhs on all complete rows and D x = 0 past the output
    /// cap, as table cochains.
    std::optional<TotalCochain<K>> solution;
    SparseRow<K> particular;
    /// Cocycles within the caps (same extension condition); the freedom in x.
    std::vector<SparseRow<K>> kernel;
    std::size_t rank = 0;
    std::optional<Witness> witness;
    DAssembly<K> assembly;
};

/// Solves D x = rhs for x in C^k. rhs is a (k+1)-cochain.
template <Field K>
CoboundarySolve<K> solve_coboundary(const Factorisation<K>& fac, const TotalCochain<K>& rhs,
                                    std::optional<Caps> caps = std::nullopt, bool want_kernel = true)
{
    const unsigned k = rhs.degree() - 1;
    if (k == 0)
        throw std::invalid_argument("solve_coboundary: right-hand side must have degree >= 2");
    CoboundarySolve<K> out;
    out.assembly = assemble_D(fac, k, caps);
    auto& as = out.assembly;
    const unsigned out_cap = as.caps ? as.caps->output : 0;

    std::vector<std::pair<CochainBasisIndex, K>> rhs_entries;
    for (const auto& [deg, t] : as.row_tuples) {
        XElement<K> v;
        try {
            v = rhs.component(deg.m)(t);
        } catch (const CapEscapeError& e) {
            out.status = SolveStatus::Inconclusive;
            out.reason = std::string("right-hand side unavailable: ") + e.what();
            return out;
        }
        for (const auto& [key, c] : v) {
            const CochainBasisIndex rk{deg, t, key};
            if (as.caps && detail::output_degree(fac, key) > out_cap) {
                out.status = SolveStatus::Inconclusive;
                out.reason = "right-hand side has output " + describe(fac, rk) + " beyond the output cap";
                return out;
            }
            if (as.overflow_index.count(rk)) {
                out.status = SolveStatus::Inconclusive;
                out.reason = "right-hand side meets an incomplete equation at " + describe(fac, rk);
                return out;
            }
            rhs_entries.emplace_back(rk, c);
        }
    }
    for (const auto& [rk, c] : rhs_entries)
        as.ensure_row(rk);
    std::vector<K> b(as.rows.size(), K(0));
    for (const auto& [rk, c] : rhs_entries)
        b[as.row_index.at(rk)] += c;

    const auto lin = solve(as.matrix, b, want_kernel);
    out.rank = lin.rank;
    if (!lin.consistent) {
        const auto& rk = as.rows.at(*lin.witness_row);
        Witness w;
        w.inputs.push_back(describe(fac, rk));
        w.lhs = "D x";
        w.rhs = b[*lin.witness_row].str();
        out.witness = w;
        if (as.caps && !as.graded) {
            out.status = SolveStatus::Inconclusive;
            out.reason = "capped system inconsistent but the base is not graded";
        } else {
            out.status = SolveStatus::Inconsistent;
            out.reason = as.caps ? "inconsistent on complete equations within caps" : "inconsistent";
        }
        return out;
    }
    LinearSolve<K> sol = lin;
    if (as.overflow.rows() > 0) {
        ExactMatrix<K> full(as.matrix.rows() + as.overflow.rows(), as.matrix.cols());
        for (std::size_t r = 0; r < as.matrix.rows(); ++r)
            for (const auto& [c, v] : as.matrix.row(r))
                full.add(r, c, v);
        for (std::size_t r = 0; r < as.overflow.rows(); ++r)
            for (const auto& [c, v] : as.overflow.row(r))
                full.add(as.matrix.rows() + r, c, v);
        std::vector<K> fb = b;
        fb.resize(full.rows(), K(0));
        sol = solve(full, fb, want_kernel);
        if (!sol.consistent) {
            out.status = SolveStatus::Inconclusive;
            out.reason = "solvable on complete equations, but no solution within the caps vanishes past "
                         "the output cap";
            return out;
        }
    }
    out.status = SolveStatus::Solved;
    out.rank = sol.rank;
    out.particular = sol.particular;
    out.kernel = sol.kernel;
    out.solution = from_coordinates(fac, k, as.columns, sol.particular,
                                    as.caps ? std::optional<unsigned>(as.caps->input) : std::nullopt);
    return out;
}

struct CohomologyDimension {
    unsigned k = 0;
    std::size_t dim_prev = 0; // dim C^{k-1} (0 when k = 1)
    std::size_t dim = 0;      // dim C^k
    std::size_t dim_next = 0; // dim C^{k+1}
    std::size_t rank_prev = 0;
    std::size_t rank = 0;
    std::size_t cohomology = 0;
};

/// dim H^k = dim ker D_k - rank D_{k-1}; finite factorisations only.
template <Field K>
CohomologyDimension cohomology_dim(const Factorisation<K>& fac, unsigned k)
{
    if (!fac.finite())
        throw MissingCapsError("cohomology dimensions need finite-dimensional algebras");
    if (k == 0)
        throw std::invalid_argument("cohomology_dim: degree 0 is not part of the complex");
    CohomologyDimension r;
    r.k = k;
    const auto Dk = assemble_D(fac, k);
    r.dim = Dk.columns.size();
    r.dim_next = Dk.rows.size();
    r.rank = rank_and_kernel(Dk.matrix, false).rank;
    if (k >= 2) {
        const auto Dp = assemble_D(fac, k - 1);
        r.dim_prev = Dp.columns.size();
        r.rank_prev = rank_and_kernel(Dp.matrix, false).rank;
    }
    r.cohomology = r.dim - r.rank - r.rank_prev;
    return r;
}

/// Writes a degree-2 cocycle z of a finite factorisation as lambda * g plus a
/// coboundary; g must represent a nonzero class. Returns lambda.
template <Field K>
K normalize_representative(const Factorisation<K>& fac, const TotalCochain<K>& z, const TotalCochain<K>& g)
{
    if (!fac.finite())
        throw MissingCapsError("normalize_representative needs finite-dimensional algebras");
    if (z.degree() != 2 || g.degree() != 2)
        throw std::invalid_argument("normalize_representative: expects degree-2 cochains");
    const auto Dz = vanishes_on(fac, total_D(fac, z), 0, "D z = 0");
    if (!Dz.pass)
        throw NotACocycleError("input is not a cocycle", *Dz.witness);

    auto D1 = assemble_D(fac, 1);
    const auto rows = cochain_basis(fac, 2);
    ExactMatrix<K> M(rows.size(), D1.columns.size() + 1);
    std::map<CochainBasisIndex, std::size_t> position;
    for (std::size_t r = 0; r < rows.size(); ++r)
        position.emplace(rows[r], r);
    for (std::size_t r = 0; r < D1.rows.size(); ++r)
        for (const auto& [c, v] : D1.matrix.row(r))
            M.add(position.at(D1.rows[r]), c, v);
    const std::size_t gcol = D1.columns.size();
    const auto gv = coordinates(rows, g);
    for (std::size_t r = 0; r < rows.size(); ++r)
        M.add(r, gcol, gv[r]);
    if (rank_and_kernel(M, false).rank != rank_and_kernel(D1.matrix, false).rank + 1)
        throw std::invalid_argument("normalize_representative: generator is a coboundary");
    const auto lin = solve(M, coordinates(rows, z), false);
    if (!lin.consistent)
        throw std::runtime_error("normalize_representative: class is not a multiple of the generator");
    for (const auto& [c, v] : lin.particular)
        if (c == gcol)
            return v;
    return K(0);
}

} // namespace factorlab
