#include "brick/bigint.hpp"

namespace brick {

Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int out = 1;
    for (long i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;  // exact: out is C(n-k+i, i) after each step
    }
    return out;
}

}  // namespace brick
