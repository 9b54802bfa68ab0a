#include "xychain/pfaffian.hpp"

#include <cmath>

namespace xychain {

double pfaffian(Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return 1.0;
    if (n % 2 == 1) return 0.0;

    double result = 1.0;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        // pivot: largest |a(i,k)| for i > k
        Eigen::Index kp = k + 1;
        for (Eigen::Index i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            result = -result;
        }
        const double piv = a(k, k + 1);
        if (piv == 0.0) return 0.0;
        result *= piv;
        if (k + 2 < n) {
            Eigen::VectorXd tau = a.row(k).segment(k + 2, n - k - 2) / piv;
            Eigen::VectorXd col = a.col(k + 1).segment(k + 2, n - k - 2);
            a.bottomRightCorner(n - k - 2, n - k - 2).noalias() +=
                tau * col.transpose() - col * tau.transpose();
        }
    }
    return result;
}

} // namespace xychain
