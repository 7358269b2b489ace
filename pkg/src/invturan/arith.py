"""Exact integer helpers for certified bounds."""

from math import comb, isqrt


def iroot(x, k):
    """floor(x ** (1/k)) for integers x >= 0, k >= 1."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return isqrt(x)
    r = int(round(x ** (1.0 / k))) if x.bit_length() < 1000 else 1 << (x.bit_length() // k)
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def iroot_ceil(x, k):
    r = iroot(x, k)
    return r if r ** k == x else r + 1


def min_convex_sum(total, slots, cap, s):
    """Minimum of sum(binom(d_i, s)) over integer d_1..d_slots in [0, cap] summing to total.

    Balanced sequences minimize a convex separable sum, so the answer is attained
    at the near-equal split.  Returns None when no sequence exists.
    """
    if slots <= 0:
        return 0 if total == 0 else None
    if total < 0 or total > slots * cap:
        return None
    q, r = divmod(total, slots)
    return r * comb(q + 1, s) + (slots - r) * comb(q, s)


def max_degree_sum(caps, s, capacity):
    """Maximize sum(d_i) s.t. 0 <= d_i <= caps[i] and sum(binom(d_i, s)) <= capacity.

    Marginal cost of raising d to d+1 is binom(d, s-1), nondecreasing in d, so
    filling cheapest increments first is optimal.
    """
    import heapq

    heap = [(comb(0, s - 1), i, 0) for i, c in enumerate(caps) if c > 0]
    heapq.heapify(heap)
    used = 0
    total = 0
    while heap:
        cost, i, d = heapq.heappop(heap)
        if used + cost > capacity:
            break
        used += cost
        total += 1
        d += 1
        if d < caps[i]:
            heapq.heappush(heap, (comb(d, s - 1), i, d))
    return total
