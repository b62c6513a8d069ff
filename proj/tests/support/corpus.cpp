#include "corpus.hpp"

namespace gyro::testing {

CayleyTable cyclic(std::size_t n) {
    std::vector<Element> e(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) e[a * n + b] = (a + b) % n;
    return CayleyTable(n, std::move(e));
}

CayleyTable direct_product(const CayleyTable& a, const CayleyTable& b) {
    const std::size_t na = a.order(), nb = b.order(), n = na * nb;
    std::vector<Element> e(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            e[x * n + y] = a.at(x / nb, y / nb) * nb + b.at(x % nb, y % nb);
    return CayleyTable(n, std::move(e));
}

CayleyTable dihedral(std::size_t k) {
    // r^i -> i, s r^i -> k + i; (s^p r^i)(s^q r^j) = s^(p+q) r^((-1)^q i + j).
    const std::size_t n = 2 * k;
    std::vector<Element> e(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t p = x / k, i = x % k, q = y / k, j = y % k;
            const std::size_t rot = (q == 0 ? i + j : (k - i) + j) % k;
            e[x * n + y] = ((p + q) % 2) * k + rot;
        }
    return CayleyTable(n, std::move(e));
}

CayleyTable quaternion() {
    // Elements: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    struct Q { int sign; int unit; };  // unit 0:1 1:i 2:j 3:k
    auto decode = [](std::size_t x) { return Q{x % 2 == 0 ? 1 : -1, static_cast<int>(x / 2)}; };
    auto encode = [](Q q) { return static_cast<std::size_t>(q.unit * 2 + (q.sign == 1 ? 0 : 1)); };
    // Unit products: table[u][v] = (sign, unit)
    const Q units[4][4] = {
        {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
    };
    std::vector<Element> e(64);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            const Q a = decode(x), b = decode(y);
            const Q u = units[a.unit][b.unit];
            e[x * 8 + y] = encode(Q{a.sign * b.sign * u.sign, u.unit});
        }
    return CayleyTable(8, std::move(e));
}

CayleyTable klein_four() { return direct_product(cyclic(2), cyclic(2)); }

std::vector<NamedTable> small_corpus() {
    return {{"Z2", cyclic(2)},      {"Z3", cyclic(3)}, {"Z4", cyclic(4)},
            {"Klein4", klein_four()}, {"Z6", cyclic(6)}, {"S3", symmetric3()}};
}

std::vector<NamedTable> groups_up_to_8() {
    return {{"Z1", cyclic(1)},
            {"Z2", cyclic(2)},
            {"Z3", cyclic(3)},
            {"Z4", cyclic(4)},
            {"Klein4", klein_four()},
            {"Z5", cyclic(5)},
            {"Z6", cyclic(6)},
            {"S3", symmetric3()},
            {"Z7", cyclic(7)},
            {"Z8", cyclic(8)},
            {"Z2xZ4", direct_product(cyclic(2), cyclic(4))},
            {"Z2^3", direct_product(cyclic(2), klein_four())},
            {"D4", dihedral(4)},
            {"Q8", quaternion()}};
}

CayleyTable gyro8() {
    // Z2^3 under xor, except rows 6 and 7 exchange their entries in columns 2..5 pairwise.
    return CayleyTable(8, {0, 1, 2, 3, 4, 5, 6, 7,
                           1, 0, 3, 2, 5, 4, 7, 6,
                           2, 3, 0, 1, 6, 7, 4, 5,
                           3, 2, 1, 0, 7, 6, 5, 4,
                           4, 5, 6, 7, 0, 1, 2, 3,
                           5, 4, 7, 6, 1, 0, 3, 2,
                           6, 7, 5, 4, 3, 2, 0, 1,
                           7, 6, 4, 5, 2, 3, 1, 0});
}

std::vector<NamedTable> gyrogroup_corpus() {
    auto out = small_corpus();
    out.push_back({"G8", gyro8()});
    return out;
}

CayleyTable corrupted_z4() {
    CayleyTable t = cyclic(4);
    const Element a = t.at(1, 1), b = t.at(1, 2);
    t.set(1, 1, b);
    t.set(1, 2, a);
    return t;
}

}  // namespace gyro::testing
