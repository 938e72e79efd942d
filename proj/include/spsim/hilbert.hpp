#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace spsim {

inline constexpr int kDim = 9;  // states with at most 2 quanta

using Complex = std::complex<double>;
using Mat9 = Eigen::Matrix<Complex, kDim, kDim>;

/// One basis ket |dot, n_cav, n_ext>. dot: false = G, true = X.
struct BasisState {
    bool excited = false;
    int n_cav = 0;
    int n_ext = 0;

    int quanta() const { return (excited ? 1 : 0) + n_cav + n_ext; }

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// The truncated 9-state space, enumerated in a fixed order:
/// sorted by total quanta, then dot state (G before X), then n_cav.
/// |G,0,2> stands for the whole 2+ photon sector of the external mode.
class StateSpace {
public:
    StateSpace();

    int size() const { return kDim; }
    const BasisState& state(int i) const { return states_[static_cast<size_t>(i)]; }

    /// Index of a basis state, or -1 if it lies outside the truncation.
    int index(const BasisState& s) const;

    bool contains(const BasisState& s) const { return index(s) >= 0; }

private:
    std::array<BasisState, kDim> states_;
};

const StateSpace& space();

enum class OperatorKind {
    A,           // cavity annihilation
    ADag,        // cavity creation
    BDag,        // external-mode creation
    SigmaMinus,  // |G><X|
    SigmaPlus,   // |X><G|
    ProjX,       // |X><X|
    ABDag,       // a b^dag, the cavity -> external transfer
};

/// Matrix of a physical operator on the truncated space. Matrix elements whose
/// target state would carry more than 2 quanta are zero. Composite kinds
/// (ABDag) are evaluated on the untruncated ladder first and then restricted,
/// so quanta-conserving products keep all their in-space elements.
Mat9 make_operator(OperatorKind kind, const StateSpace& sp);

/// Jaynes-Cummings interaction i g (a^dag sigma^- - a sigma^+), hbar = 1.
Mat9 hamiltonian(double g, const StateSpace& sp);

/// Diagonal of the total-quanta observable.
Eigen::Matrix<double, kDim, 1> quanta_diagonal(const StateSpace& sp);

std::string to_string(const BasisState& s);

/// Debug dump, one line per matrix entry: row,col,re,im.
void dump_operator_csv(const Mat9& op, std::ostream& os);

}  // namespace spsim
