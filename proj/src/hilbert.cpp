#include "spsim/hilbert.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>
#include <vector>

namespace spsim {

StateSpace::StateSpace() {
    std::vector<BasisState> all;
    for (int dot = 0; dot <= 1; ++dot)
        for (int nc = 0; nc <= 2; ++nc)
            for (int ne = 0; ne <= 2; ++ne) {
                BasisState s{dot == 1, nc, ne};
                if (s.quanta() <= 2) all.push_back(s);
            }
    std::sort(all.begin(), all.end(), [](const BasisState& a, const BasisState& b) {
        return std::make_tuple(a.quanta(), a.excited, a.n_cav) <
               std::make_tuple(b.quanta(), b.excited, b.n_cav);
    });
    std::copy(all.begin(), all.end(), states_.begin());
}

int StateSpace::index(const BasisState& s) const {
    for (int i = 0; i < kDim; ++i)
        if (states_[static_cast<size_t>(i)] == s) return i;
    return -1;
}

const StateSpace& space() {
    static const StateSpace sp;
    return sp;
}

namespace {

// Accumulate amp * |to><from| if both ends live in the truncated space.
void add_element(Mat9& m, const StateSpace& sp, const BasisState& to, double amp,
                 const BasisState& from) {
    const int i = sp.index(to);
    const int j = sp.index(from);
    if (i >= 0 && j >= 0) m(i, j) += amp;
}

}  // namespace

Mat9 make_operator(OperatorKind kind, const StateSpace& sp) {
    Mat9 m = Mat9::Zero();
    for (int j = 0; j < sp.size(); ++j) {
        const BasisState& s = sp.state(j);
        switch (kind) {
            case OperatorKind::A:
                if (s.n_cav > 0)
                    add_element(m, sp, {s.excited, s.n_cav - 1, s.n_ext},
                                std::sqrt(double(s.n_cav)), s);
                break;
            case OperatorKind::ADag:
                add_element(m, sp, {s.excited, s.n_cav + 1, s.n_ext},
                            std::sqrt(double(s.n_cav + 1)), s);
                break;
            case OperatorKind::BDag:
                add_element(m, sp, {s.excited, s.n_cav, s.n_ext + 1},
                            std::sqrt(double(s.n_ext + 1)), s);
                break;
            case OperatorKind::SigmaMinus:
                if (s.excited) add_element(m, sp, {false, s.n_cav, s.n_ext}, 1.0, s);
                break;
            case OperatorKind::SigmaPlus:
                if (!s.excited) add_element(m, sp, {true, s.n_cav, s.n_ext}, 1.0, s);
                break;
            case OperatorKind::ProjX:
                if (s.excited) add_element(m, sp, s, 1.0, s);
                break;
            case OperatorKind::ABDag:
                // a b^dag |d,n,m> = sqrt(n) sqrt(m+1) |d,n-1,m+1>, quanta conserved
                if (s.n_cav > 0)
                    add_element(m, sp, {s.excited, s.n_cav - 1, s.n_ext + 1},
                                std::sqrt(double(s.n_cav)) * std::sqrt(double(s.n_ext + 1)),
                                s);
                break;
        }
    }
    return m;
}

Mat9 hamiltonian(double g, const StateSpace& sp) {
    Mat9 m = Mat9::Zero();
    const Complex ig(0.0, g);
    for (int j = 0; j < sp.size(); ++j) {
        const BasisState& s = sp.state(j);
        // a^dag sigma^- |X,n,m> = sqrt(n+1) |G,n+1,m>
        if (s.excited) {
            const int i = sp.index({false, s.n_cav + 1, s.n_ext});
            if (i >= 0) m(i, j) += ig * std::sqrt(double(s.n_cav + 1));
        }
        // a sigma^+ |G,n,m> = sqrt(n) |X,n-1,m>
        if (!s.excited && s.n_cav > 0) {
            const int i = sp.index({true, s.n_cav - 1, s.n_ext});
            if (i >= 0) m(i, j) -= ig * std::sqrt(double(s.n_cav));
        }
    }
    return m;
}

Eigen::Matrix<double, kDim, 1> quanta_diagonal(const StateSpace& sp) {
    Eigen::Matrix<double, kDim, 1> d;
    for (int i = 0; i < sp.size(); ++i) d(i) = sp.state(i).quanta();
    return d;
}

std::string to_string(const BasisState& s) {
    std::string out = "|";
    out += s.excited ? 'X' : 'G';
    out += ',';
    out += static_cast<char>('0' + s.n_cav);
    out += ',';
    out += static_cast<char>('0' + s.n_ext);
    out += ">";
    return out;
}

void dump_operator_csv(const Mat9& op, std::ostream& os) {
    os << "row,col,re,im\n";
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            os << i << ',' << j << ',' << op(i, j).real() << ',' << op(i, j).imag() << '\n';
}

}  // namespace spsim
