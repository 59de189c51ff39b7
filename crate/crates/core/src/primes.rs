//! Prime powers by trial division.
//!
//! Every order this crate deals with is far below `10^9`, so plain trial
//! division is plenty.

/// Returns `(p, k)` with `q = p^k` if `q` is a prime power, `None` otherwise.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn smallest_prime_factor(q: u64) -> u64 {
    debug_assert!(q >= 2);
    if q.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    q
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && smallest_prime_factor(q) == q
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decomposition(q).is_some()
}

/// Smallest prime power strictly greater than `q`.
pub fn next_prime_power(q: u64) -> u64 {
    let mut c = q.saturating_add(1).max(2);
    while !is_prime_power(c) {
        c += 1;
    }
    c
}

/// Iterator over the prime powers `>= from`, in increasing order.
pub fn prime_powers_from(from: u64) -> impl Iterator<Item = u64> {
    let mut next = if is_prime_power(from) {
        from
    } else {
        next_prime_power(from)
    };
    core::iter::from_fn(move || {
        let cur = next;
        next = next_prime_power(cur);
        Some(cur)
    })
}
