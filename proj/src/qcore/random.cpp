#include "entcost/qcore/random.hpp"

namespace entcost::qcore {

CMat ginibre(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    CMat g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double re = n01(rng);
            double im = n01(rng);
            g(i, j) = Cplx(re, im);
        }
    return g;
}

CMat haar_unitary(int d, std::mt19937_64& rng) {
    CMat g = ginibre(d, d, rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (int j = 0; j < d; ++j) {
        Cplx rd = r(j, j);
        double a = std::abs(rd);
        q.col(j) *= (a > 0 ? rd / a : Cplx(1, 0));
    }
    return q;
}

BipartiteState random_state(int dim_a, int dim_b, int rank, std::uint64_t seed) {
    const int d = dim_a * dim_b;
    if (rank < 1 || rank > d) throw std::invalid_argument("random_state: rank out of range");
    std::mt19937_64 rng(seed);
    CMat g = ginibre(d, rank, rng);
    CMat m = g * g.adjoint();
    m /= m.trace().real();
    return BipartiteState(HermitianOperator(m), dim_a, dim_b);
}

std::uint64_t split_seed(std::uint64_t root, std::uint64_t index) {
    // splitmix64 step over (root, index)
    std::uint64_t z = root + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace entcost::qcore
