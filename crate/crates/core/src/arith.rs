//! Machine-integer number theory used by the coefficient rings and the
//! lattice kernels.

/// Greatest common divisor, always non-negative.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a as i128, b as i128) as u64
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Canonical residue of `a` modulo `n` in `[0, n)`.
pub fn reduce(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| reduce(x, n))
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Prime factorization by trial division, as `(p, k)` pairs in increasing
/// order of `p`. Intended for moduli up to about `1e12`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

/// The orthogonal idempotents of `Z/n` attached to its prime-power factors:
/// `(p^k, e)` with `e = 1 mod p^k` and `e = 0` modulo every other factor.
pub fn crt_idempotents(n: u64) -> Vec<(u64, u64)> {
    factorize(n)
        .into_iter()
        .map(|(p, k)| {
            let q = p.pow(k);
            let rest = n / q;
            // e = rest * (rest^{-1} mod q)
            let inv = inv_mod(rest % q, q).expect("coprime cofactors");
            (q, mul_mod(rest % n, inv, n))
        })
        .collect()
}

/// p-adic valuation of a residue modulo `p^k`; returns `k` for zero.
pub fn valuation(mut a: u64, p: u64, k: u32) -> u32 {
    if a == 0 {
        return k;
    }
    let mut v = 0;
    while a.is_multiple_of(p) && v < k {
        a /= p;
        v += 1;
    }
    v
}

pub fn binomial(n: u64, k: u64) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
