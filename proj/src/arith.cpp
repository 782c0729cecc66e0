#include "tamagawa/arith.hpp"

#include <algorithm>
#include <numeric>

namespace tamagawa {

namespace {

constexpr uint32_t sieve_bound = 1'000'000;

std::vector<uint32_t> build_sieve() {
    std::vector<bool> composite(sieve_bound + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= sieve_bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j <= sieve_bound; j += i) composite[j] = true;
    }
    return primes;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, long r) {
    if (a % n == 0) return false;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witnessed
}

// First 13 primes certify primality below 3.317e24.
const long det_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

Int det_bound() {
    Int b;
    b = "3317044064679887385961981";
    return b;
}

// Pollard-Brent with batched gcd. Returns a nontrivial factor or 0 on budget miss.
Int pollard_brent(const Int& n, long c_param, long max_iters) {
    if (n % 2 == 0) return 2;
    Int y = 2, c = c_param, m = 128;
    Int g = 1, r = 1, q = 1, x, ys;
    long spent = 0;
    auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
    while (g == 1 && spent < max_iters) {
        x = y;
        for (Int i = 0; i < r; ++i) y = f(y);
        Int k = 0;
        while (k < r && g == 1 && spent < max_iters) {
            ys = y;
            Int rk = r - k;
            Int limit = m < rk ? m : rk;
            for (Int i = 0; i < limit; ++i) {
                y = f(y);
                q = q * abs(x - y) % n;
            }
            spent += mpz_get_si(limit.get_mpz_t());
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    if (g == n || g == 1) return 0;
    return g;
}

// Splits composite m (no factors <= 1e6) into primes, pushing failures into cofactor.
void split_composite(Int m, const FactorBudget& budget, std::vector<Int>& primes_out,
                     Int& cofactor) {
    if (m == 1) return;
    if (is_prime(m)) {
        primes_out.push_back(m);
        return;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
        for (unsigned long e = 2; e <= mpz_sizeinbase(m.get_mpz_t(), 2); ++e) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e) != 0) {
                std::vector<Int> base_primes;
                Int base_cof = 1;
                split_composite(root, budget, base_primes, base_cof);
                for (unsigned long i = 0; i < e; ++i) {
                    for (const Int& p : base_primes) primes_out.push_back(p);
                    if (base_cof != 1) cofactor *= base_cof;
                }
                return;
            }
        }
    }
    for (int round = 0; round < budget.rho_rounds; ++round) {
        Int g = pollard_brent(m, 2 * round + 1, budget.rho_iterations);
        if (g != 0) {
            split_composite(g, budget, primes_out, cofactor);
            split_composite(m / g, budget, primes_out, cofactor);
            return;
        }
    }
    cofactor *= m;
}

}  // namespace

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = build_sieve();
    return primes;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (uint32_t p : small_primes()) {
        if (p > 600) break;
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < det_bound()) {
        Int d = n - 1;
        long r = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++r;
        }
        for (long a : det_bases)
            if (miller_rabin_witness(n, a, d, r)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

long valuation(const Int& x, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("valuation: p = " + to_string(p) + " is not prime");
    if (x == 0) return val_inf;
    Int rest;
    return long(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& x, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("valuation: p = " + to_string(p) + " is not prime");
    if (x == 0) return val_inf;
    Int rest;
    long vn = long(mpz_remove(rest.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
    long vd = long(mpz_remove(rest.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
    return vn - vd;
}

Int PrimeFactorization::abs_value() const {
    Int v = cofactor;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

Int PrimeFactorization::factored_part() const {
    Int v = 1;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

long PrimeFactorization::exponent_of(const Int& p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

PrimeFactorization factorize(const Int& n, const FactorBudget& budget,
                             const std::vector<Int>& hint_primes) {
    if (n == 0) throw ArgumentError("factorize: n = 0");
    PrimeFactorization out;
    out.sign = n < 0 ? -1 : 1;
    Int m = abs(n);

    std::vector<std::pair<Int, long>> found;
    if (!hint_primes.empty()) {
        std::vector<Int> hints = hint_primes;
        std::sort(hints.begin(), hints.end());
        hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
        for (const Int& p : hints) {
            if (p < 2 || m % p != 0 || !is_prime(p)) continue;
            Int rest;
            long e = long(mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
            m = rest;
            found.emplace_back(p, e);
        }
    }

    for (uint32_t p : small_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (m % p == 0) {
            Int rest;
            long e = long(mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t()));
            m = rest;
            found.emplace_back(p, e);
        }
    }
    if (m > 1 && m <= Int(sieve_bound) * sieve_bound) {
        // survived trial division below sqrt, hence prime
        found.emplace_back(m, 1);
        m = 1;
    }

    if (m > 1) {
        std::vector<Int> primes;
        split_composite(m, budget, primes, out.cofactor);
        std::sort(primes.begin(), primes.end());
        for (size_t i = 0; i < primes.size();) {
            size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            found.emplace_back(primes[i], long(j - i));
            i = j;
        }
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, e] : found) {
        if (!out.factors.empty() && out.factors.back().first == p)
            out.factors.back().second += e;
        else
            out.factors.emplace_back(p, e);
    }
    return out;
}

std::pair<Int, Int> squarefree_part(const Int& d, const FactorBudget& budget) {
    if (d == 0) throw ArgumentError("squarefree_part: d = 0");
    PrimeFactorization f = factorize(d, budget);
    if (!f.complete()) {
        if (mpz_perfect_square_p(f.cofactor.get_mpz_t())) {
            Int root;
            mpz_sqrt(root.get_mpz_t(), f.cofactor.get_mpz_t());
            Int s = f.sign, m = root;
            for (const auto& [p, e] : f.factors) {
                if (e % 2) s *= p;
                Int ph;
                mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
                m *= ph;
            }
            return {s, m};
        }
        throw IncompleteFactorization("squarefree_part: unfactored cofactor " +
                                      to_string(f.cofactor) + " of " + to_string(d));
    }
    Int s = f.sign, m = 1;
    for (const auto& [p, e] : f.factors) {
        if (e % 2) s *= p;
        Int ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
        m *= ph;
    }
    return {s, m};
}

int legendre_symbol(const Int& a, const Int& p) {
    if (p == 2 || !is_prime(p))
        throw ArgumentError("legendre_symbol: p = " + to_string(p) + " is not an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

std::vector<Rat> enumerate_rationals(long H) {
    if (H < 1) throw ArgumentError("enumerate_rationals: H = " + std::to_string(H));
    std::vector<Rat> out;
    for (long q = 1; q <= H; ++q)
        for (long p = -H; p <= H; ++p) {
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            out.emplace_back(Rat(p, q));
        }
    return out;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace tamagawa
