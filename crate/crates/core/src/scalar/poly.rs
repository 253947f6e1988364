//! Dense polynomials over GF(p), coefficients ascending, no trailing zeros.
//! The zero polynomial is the empty vector.

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `m`.
pub(crate) fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p).expect("leading coefficient is nonzero");
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0u64; rem.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < dm {
            break;
        }
        let shift = dr - dm;
        let coef = mul_mod(rem[dr], lead_inv, p);
        quot[shift] = coef;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let t = mul_mod(coef, c, p);
            rem[i + shift] = (rem[i + shift] + p - t) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

fn make_monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match degree(&a) {
        None => a,
        Some(d) => {
            let inv = inv_mod(a[d], p).expect("nonzero leading coefficient");
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

pub(crate) fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_poly(&acc, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is the gcd; it must be a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    let inv: Vec<u64> = s0.into_iter().map(|x| mul_mod(x, c, p)).collect();
    Some(rem(&inv, m, p))
}

/// Ben-Or irreducibility test: `f` of degree d is irreducible iff
/// gcd(x^(p^i) - x, f) = 1 for i = 1..=d/2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=d / 2 {
        h = powmod_poly(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
