#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emss/linalg.hpp"

namespace emss {

enum class Direction { chain, cochain };

/* (homological index, internal degree) */
using Cell = std::pair<int, int>;

/// Finite-dimensional bigraded free complex. Differentials preserve the
/// internal degree and move s by +1 (cochain) or -1 (chain). The matrix of
/// cell (s, q) has one column per basis element of (s, q) and one row per
/// basis element of (target(s), q).
class FreeComplex {
public:
    FreeComplex() = default;
    FreeComplex(Field f, Direction d) : field_(f), dir_(d) {}

    const Field& field() const { return field_; }
    Direction direction() const { return dir_; }
    int target(int s) const { return dir_ == Direction::cochain ? s + 1 : s - 1; }
    int source(int s) const { return dir_ == Direction::cochain ? s - 1 : s + 1; }

    std::size_t add_basis(int s, int q, std::string label);
    std::size_t dim(int s, int q) const;
    const std::vector<std::string>& labels(int s, int q) const;
    std::vector<Cell> cells() const;

    void set_differential(int s, int q, Matrix m);
    /* Zero matrix of the right shape when nothing was stored. */
    Matrix differential(int s, int q) const;

    /* Largest s at which cohomology is exact (the stage above exists). */
    std::optional<int> exact_through() const { return exact_through_; }
    void set_exact_through(int s) { exact_through_ = s; }

    /* Exact check of d o d = 0 on every populated cell. */
    bool is_square_zero() const;
    void check_square_zero() const;

private:
    Field field_;
    Direction dir_ = Direction::cochain;
    std::map<Cell, std::vector<std::string>> basis_;
    std::map<Cell, Matrix> diff_;
    std::optional<int> exact_through_;
};

struct CohomologyWindow {
    std::optional<int> s_lo, s_hi, q_lo, q_hi;

    bool contains(int s, int q) const
    {
        return (!s_lo || s >= *s_lo) && (!s_hi || s <= *s_hi) && (!q_lo || q >= *q_lo) && (!q_hi || q <= *q_hi);
    }
};

/// Cohomology of one cell. `representatives` is in RREF and every row is
/// reduced against the coboundary echelon, so repeated runs agree bit for bit.
struct CohomologyCell {
    std::size_t dim = 0;
    Echelon coboundaries;
    Echelon representatives;
    Matrix outgoing;
};

class CohomologyResult {
public:
    std::map<Cell, CohomologyCell> cells;

    std::size_t dim(int s, int q) const;
    /* Nonzero dims keyed by (p, q) = (s, q). */
    BigradedSeries dims() const;
    std::vector<Vector> representatives(int s, int q) const;

    bool is_cocycle(int s, int q, const Vector& v) const;
    /* Class coordinates of a cocycle in the representative basis. */
    Vector coordinates(int s, int q, const Vector& cocycle) const;

    bool operator==(const CohomologyResult& o) const;
};

/* Cells are independent, so they are solved in parallel (OpenMP). */
CohomologyResult cohomology(const FreeComplex& cx, const CohomologyWindow& w = {});
/* Single-threaded reference with the same output. */
CohomologyResult cohomology_serial(const FreeComplex& cx, const CohomologyWindow& w = {});

}  // namespace emss
