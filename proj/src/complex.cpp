#include "emss/complex.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emss {

std::size_t FreeComplex::add_basis(int s, int q, std::string label)
{
    auto& v = basis_[{s, q}];
    v.push_back(std::move(label));
    return v.size() - 1;
}

std::size_t FreeComplex::dim(int s, int q) const
{
    auto it = basis_.find({s, q});
    return it == basis_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& FreeComplex::labels(int s, int q) const
{
    static const std::vector<std::string> empty;
    auto it = basis_.find({s, q});
    return it == basis_.end() ? empty : it->second;
}

std::vector<Cell> FreeComplex::cells() const
{
    std::vector<Cell> out;
    for (auto& [c, v] : basis_)
        if (!v.empty())
            out.push_back(c);
    return out;
}

void FreeComplex::set_differential(int s, int q, Matrix m)
{
    if (m.rows() != dim(target(s), q) || m.cols() != dim(s, q))
        throw Error("differential shape mismatch at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    diff_[{s, q}] = std::move(m);
}

Matrix FreeComplex::differential(int s, int q) const
{
    auto it = diff_.find({s, q});
    if (it != diff_.end())
        return it->second;
    return Matrix(field_, dim(target(s), q), dim(s, q));
}

bool FreeComplex::is_square_zero() const
{
    for (auto& [c, v] : basis_) {
        auto [s, q] = c;
        if (!dim(target(s), q) || !dim(target(target(s)), q))
            continue;
        if (!(differential(target(s), q) * differential(s, q)).is_zero())
            return false;
    }
    return true;
}

void FreeComplex::check_square_zero() const
{
    for (auto& [c, v] : basis_) {
        auto [s, q] = c;
        if (!dim(target(s), q) || !dim(target(target(s)), q))
            continue;
        if (!(differential(target(s), q) * differential(s, q)).is_zero())
            throw Error("d o d != 0 at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    }
}

namespace {

std::vector<Cell> selected_cells(const FreeComplex& cx, const CohomologyWindow& w)
{
    std::vector<Cell> out;
    for (auto& c : cx.cells()) {
        if (!w.contains(c.first, c.second))
            continue;
        if (cx.exact_through() && c.first > *cx.exact_through())
            continue;
        out.push_back(c);
    }
    return out;
}

CohomologyCell solve_cell(const FreeComplex& cx, Cell c)
{
    auto [s, q] = c;
    CohomologyCell out;
    const std::size_t n = cx.dim(s, q);
    Matrix in = cx.differential(cx.source(s), q);
    out.outgoing = cx.differential(s, q);
    if (cx.dim(cx.source(s), q) && out.outgoing.rows() && !(out.outgoing * in).is_zero())
        throw Error("d o d != 0 at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    out.coboundaries = row_echelon(in.transpose());
    Matrix z = kernel(out.outgoing);
    std::vector<Vector> reduced;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        Vector v = z.row(i);
        out.coboundaries.reduce(v);
        reduced.push_back(std::move(v));
    }
    out.representatives = row_echelon(Matrix::from_rows(cx.field(), n, reduced));
    out.dim = out.representatives.size();
    if (out.dim + out.coboundaries.size() != z.rows())
        throw Error("coboundaries are not cocycles at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    return out;
}

}  // namespace

CohomologyResult cohomology_serial(const FreeComplex& cx, const CohomologyWindow& w)
{
    CohomologyResult r;
    for (auto& c : selected_cells(cx, w))
        r.cells.emplace(c, solve_cell(cx, c));
    return r;
}

CohomologyResult cohomology(const FreeComplex& cx, const CohomologyWindow& w)
{
    const auto todo = selected_cells(cx, w);
    std::vector<CohomologyCell> solved(todo.size());
    std::exception_ptr failure;
    const long count = static_cast<long>(todo.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            solved[i] = solve_cell(cx, todo[i]);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    CohomologyResult r;
    for (std::size_t i = 0; i < todo.size(); ++i)
        r.cells.emplace(todo[i], std::move(solved[i]));
    return r;
}

std::size_t CohomologyResult::dim(int s, int q) const
{
    auto it = cells.find({s, q});
    return it == cells.end() ? 0 : it->second.dim;
}

BigradedSeries CohomologyResult::dims() const
{
    BigradedSeries out;
    for (auto& [c, cell] : cells)
        if (cell.dim)
            out[{c.first, c.second}] = static_cast<long>(cell.dim);
    return out;
}

std::vector<Vector> CohomologyResult::representatives(int s, int q) const
{
    std::vector<Vector> out;
    auto it = cells.find({s, q});
    if (it == cells.end())
        return out;
    for (std::size_t i = 0; i < it->second.representatives.size(); ++i)
        out.push_back(it->second.representatives.rows.row(i));
    return out;
}

bool CohomologyResult::is_cocycle(int s, int q, const Vector& v) const
{
    auto it = cells.find({s, q});
    if (it == cells.end())
        throw Error("no cohomology computed at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    if (it->second.outgoing.rows() == 0)
        return true;
    return is_zero(it->second.outgoing.apply(v));
}

Vector CohomologyResult::coordinates(int s, int q, const Vector& cocycle) const
{
    auto it = cells.find({s, q});
    if (it == cells.end())
        throw Error("no cohomology computed at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    const auto& cell = it->second;
    Vector v = cocycle;
    cell.coboundaries.reduce(v);
    Vector coords;
    for (std::size_t i = 0; i < cell.representatives.size(); ++i)
        coords.push_back(v[cell.representatives.pivots[i]]);
    cell.representatives.reduce(v);
    if (!is_zero(v))
        throw Error("vector is not a cocycle at (" + std::to_string(s) + ", " + std::to_string(q) + ")");
    return coords;
}

bool CohomologyResult::operator==(const CohomologyResult& o) const
{
    if (cells.size() != o.cells.size())
        return false;
    for (auto a = cells.begin(), b = o.cells.begin(); a != cells.end(); ++a, ++b) {
        if (a->first != b->first || a->second.dim != b->second.dim)
            return false;
        if (!(a->second.representatives.rows == b->second.representatives.rows))
            return false;
    }
    return true;
}

}  // namespace emss
