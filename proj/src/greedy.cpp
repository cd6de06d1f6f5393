#include "esc/greedy.hpp"

namespace esc {

namespace {

DecompKind classify_three(const Decomposition& d) {
    switch (count_divisible_by_n(d)) {
        case 1: return DecompKind::TypeI;
        case 2: return DecompKind::TypeII;
        default: return DecompKind::General;
    }
}

}  // namespace

GreedyTrace greedy_decompose(const WideInt& n, int numerator, unsigned long max_steps) {
    if (n < 2) throw std::domain_error("greedy_decompose: n must be >= 2");
    if (numerator != 4 && numerator != 5)
        throw std::domain_error("greedy_decompose: numerator must be 4 or 5");
    if (max_steps < 1) throw std::domain_error("greedy_decompose: max_steps must be >= 1");

    GreedyTrace trace;
    trace.n = n;
    trace.numerator = numerator;
    trace.max_steps = max_steps;

    WideInt q = n / numerator;
    for (unsigned long j = 1; j <= max_steps; ++j) {
        WideInt x = q + j;
        WideInt m = numerator * x - n;  // > 0 once x > n/numerator
        WideInt nx = n * x;
        WideInt r = (m - nx % m) % m;
        if (r == 0) {
            WideInt y = nx / m;
            trace.steps.push_back({j, x, y, r});
            Decomposition d;
            d.n = n;
            d.numerator = numerator;
            d.x = x;
            d.y = y;
            d.kind = DecompKind::TwoTerm;
            if (!verify_decomposition(d))
                throw std::logic_error("greedy_decompose: two-term stop failed to verify");
            trace.stop = GreedyStop::TwoTerm;
            trace.result = std::move(d);
            return trace;
        }
        WideInt y = (nx + r) / m;  // ceil(nx/m)
        trace.steps.push_back({j, x, y, r});
        if ((nx * y) % r == 0) {
            Decomposition d;
            d.n = n;
            d.numerator = numerator;
            d.x = x;
            d.y = y;
            d.z = nx * y / r;
            d.kind = DecompKind::General;
            d.kind = classify_three(d);
            if (!verify_decomposition(d))
                throw std::logic_error("greedy_decompose: three-term stop failed to verify");
            trace.stop = GreedyStop::ThreeTerm;
            trace.result = std::move(d);
            return trace;
        }
    }
    trace.stop = GreedyStop::Exhausted;
    return trace;
}

bool converges_at(const WideInt& q, const WideInt& j) {
    if (q < 1 || j < 1) throw std::domain_error("converges_at: q, j must be >= 1");
    WideInt m = 4 * j - 1;
    WideInt P = (4 * q + 1) * (q + j);
    WideInt r = P % m;
    if (r == 0) return true;
    WideInt s = (P - r) / m;
    return P * (s + 1) % (m - r) == 0;
}

bool converges_at_squared(const WideInt& q, const WideInt& j) {
    if (q < 1 || j < 1) throw std::domain_error("converges_at_squared: q, j must be >= 1");
    WideInt m = 4 * j - 1;
    WideInt P = (4 * q + 1) * (q + j);
    WideInt r = P % m;
    if (r == 0) return true;
    return P * P % (m - r) == 0;
}

GreedyTrace greedy_product_class_check(const WideInt& a, const WideInt& b, const WideInt& c) {
    if (a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("greedy_product_class_check: arguments must be positive");
    WideInt bc = b * c;
    if (bc % 4 != 1)
        throw std::invalid_argument("greedy_product_class_check: bc must be ≡ 1 (mod 4)");
    WideInt n = a * bc - a - b;
    if (n < 2) throw std::domain_error("greedy_product_class_check: n below 2");
    // Write 4/n = 1/u + 1/v + 1/w with u = a(bc-1)/4, v = a(ac-1)(bc-1)/4,
    // w = (ac-1)((bc-1)/4)n. Once x_j reaches v, the remainder is 1/u + 1/w,
    // and u(u-1) <= w pins y_j = u with an exact 1/w left over; so the search
    // stops by step v - floor(n/4). (The u-based budget is not enough:
    // n = 2·15·7-2-15 = 193 runs 242 steps.)
    WideInt budget = a * (a * c - 1) * ((bc - 1) / 4) - n / 4 + 1;
    if (budget < 1) budget = 1;
    GreedyTrace trace = greedy_decompose(n, 4, budget.get_ui());
    if (trace.stop == GreedyStop::Exhausted)
        throw std::logic_error("greedy_product_class_check: exhausted inside the proven budget");
    return trace;
}

std::optional<WideInt> adversarial_n(const WideInt& j, const WideInt& t_max) {
    if (j < 1 || t_max < 1)
        throw std::domain_error("adversarial_n: arguments must be positive");
    std::vector<WideInt> mods;
    for (WideInt k = 1; k <= j; ++k) {
        mods.push_back(4 * k - 1);
        mods.push_back(3 * k - 1);
    }
    WideInt L = lcm_list(mods);
    for (WideInt t = 1; t <= t_max; ++t) {
        WideInt n = 4 * L * t + 1;
        if (is_prime(n)) return n;
    }
    return std::nullopt;
}

}  // namespace esc
