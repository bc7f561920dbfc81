//! Dense coefficient-vector helpers over `Z/p^N`. Index `j` holds the
//! coefficient of `T^j`; vectors may carry trailing zeros.

use crate::padic::PAdicRing;

pub(crate) fn add(ring: &PAdicRing, a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ring.add_raw(x, y)
        })
        .collect()
}

pub(crate) fn sub(ring: &PAdicRing, a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ring.sub_raw(x, y)
        })
        .collect()
}

pub(crate) fn scale(ring: &PAdicRing, a: &[u64], c: u64) -> Vec<u64> {
    a.iter().map(|&x| ring.mul_raw(x, c)).collect()
}

/// Product truncated to the first `len` coefficients.
pub(crate) fn mul_truncated(ring: &PAdicRing, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    let a_len = last_nonzero(a).map_or(0, |i| i + 1);
    let b_len = last_nonzero(b).map_or(0, |i| i + 1);
    if a_len == 0 || b_len == 0 {
        return out;
    }
    let m = ring.modulus() as u128;
    // Sum of `terms` products of residues fits in u128 when
    // terms * (m-1)^2 <= u128::MAX; reduce once per output coefficient then.
    let max_sq = (m - 1) * (m - 1);
    let terms = a_len.min(b_len) as u128;
    let lazy = max_sq == 0 || terms <= u128::MAX / max_sq;
    for (k, slot) in out.iter_mut().enumerate() {
        let lo = k.saturating_sub(b_len - 1);
        let hi = k.min(a_len - 1);
        if lo > hi {
            continue;
        }
        let mut acc: u128 = 0;
        if lazy {
            for i in lo..=hi {
                acc += a[i] as u128 * b[k - i] as u128;
            }
            *slot = (acc % m) as u64;
        } else {
            for i in lo..=hi {
                acc = (acc + (a[i] as u128 * b[k - i] as u128) % m) % m;
            }
            *slot = acc as u64;
        }
    }
    out
}

pub(crate) fn mul(ring: &PAdicRing, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    mul_truncated(ring, a, b, a.len() + b.len() - 1)
}

pub(crate) fn last_nonzero(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `m`, as a vector of length
/// `deg m`.
pub(crate) fn rem_monic(ring: &PAdicRing, a: &[u64], m: &[u64]) -> Vec<u64> {
    let d = m.len() - 1;
    debug_assert_eq!(m[d], 1, "divisor must be monic");
    let mut r = a.to_vec();
    if r.len() < d {
        r.resize(d, 0);
        return r;
    }
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        let shift = top - d;
        for (j, &mj) in m.iter().enumerate().take(d) {
            if mj != 0 {
                let t = ring.mul_raw(c, mj);
                r[shift + j] = ring.sub_raw(r[shift + j], t);
            }
        }
        r[top] = 0;
    }
    r.truncate(d);
    r
}

/// Quotient and remainder of `a` by the monic `m`.
#[cfg(test)]
pub(crate) fn divrem_monic(ring: &PAdicRing, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= d {
        r.resize(d, 0);
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - d];
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        let shift = top - d;
        q[shift] = c;
        for (j, &mj) in m.iter().enumerate().take(d) {
            if mj != 0 {
                let t = ring.mul_raw(c, mj);
                r[shift + j] = ring.sub_raw(r[shift + j], t);
            }
        }
        r[top] = 0;
    }
    r.truncate(d);
    (q, r)
}

/// Rows `0..=max_row` of Pascal's triangle reduced mod `p^N`, yielding each
/// requested row to `visit` as it is produced.
pub(crate) fn pascal_rows(ring: &PAdicRing, max_row: usize, mut visit: impl FnMut(usize, &[u64])) {
    let mut row = vec![0u64; max_row + 1];
    row[0] = 1 % ring.modulus();
    visit(0, &row[..1]);
    for n in 1..=max_row {
        for k in (1..=n).rev() {
            row[k] = ring.add_raw(row[k], row[k - 1]);
        }
        visit(n, &row[..=n]);
    }
}

/// `(1+T)^e` as an exact coefficient vector of length `e + 1`.
pub(crate) fn one_plus_t_pow(ring: &PAdicRing, e: usize) -> Vec<u64> {
    let mut out = Vec::new();
    pascal_rows(ring, e, |n, row| {
        if n == e {
            out = row.to_vec();
        }
    });
    out
}

/// `omega_n = (1+T)^{p^n} - 1`, length `p^n + 1`.
pub(crate) fn omega(ring: &PAdicRing, n: u32) -> Vec<u64> {
    let deg = ring.p().pow(n) as usize;
    let mut w = one_plus_t_pow(ring, deg);
    w[0] = ring.sub_raw(w[0], 1);
    w
}

/// `Phi_n = sum_{a < p} (1+T)^{a p^{n-1}}` for `n >= 1`, length
/// `p^n - p^{n-1} + 1`.
pub(crate) fn cyclo_phi(ring: &PAdicRing, n: u32) -> Vec<u64> {
    assert!(n >= 1);
    let p = ring.p() as usize;
    let step = p.pow(n - 1);
    let deg = (p - 1) * step;
    let mut out = vec![0u64; deg + 1];
    pascal_rows(ring, deg, |row_idx, row| {
        if row_idx % step == 0 {
            for (acc, &c) in out.iter_mut().zip(row) {
                *acc = ring.add_raw(*acc, c);
            }
        }
    });
    out
}

/// Convert polynomial-basis coefficients `b_j` (in `T`) to group-basis
/// coefficients `c_i` (in `gamma = 1+T`):
/// `c_i = sum_{j >= i} b_j C(j, i) (-1)^{j-i}`.
pub(crate) fn poly_to_group(ring: &PAdicRing, b: &[u64]) -> Vec<u64> {
    let d = b.len();
    let mut c = vec![0u64; d];
    if d == 0 {
        return c;
    }
    pascal_rows(ring, d - 1, |j, row| {
        let bj = b[j];
        if bj == 0 {
            return;
        }
        for (i, &binom) in row.iter().enumerate() {
            let t = ring.mul_raw(bj, binom);
            c[i] = if (j - i) % 2 == 0 {
                ring.add_raw(c[i], t)
            } else {
                ring.sub_raw(c[i], t)
            };
        }
    });
    c
}

/// Inverse of [`poly_to_group`]: `b_j = sum_{i >= j} c_i C(i, j)`.
pub(crate) fn group_to_poly(ring: &PAdicRing, c: &[u64]) -> Vec<u64> {
    let d = c.len();
    let mut b = vec![0u64; d];
    if d == 0 {
        return b;
    }
    pascal_rows(ring, d - 1, |i, row| {
        let ci = c[i];
        if ci == 0 {
            return;
        }
        for (j, &binom) in row.iter().enumerate() {
            b[j] = ring.add_raw(b[j], ring.mul_raw(ci, binom));
        }
    });
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_small() {
        let r = PAdicRing::new(3, 5).unwrap();
        assert_eq!(omega(&r, 0), vec![0, 1]);
        assert_eq!(omega(&r, 1), vec![0, 3, 3, 1]);
    }

    #[test]
    fn phi_divides_omega() {
        for p in [3u64, 5] {
            let r = PAdicRing::new(p, 8).unwrap();
            for n in 1..=3 {
                let (q, rem) = divrem_monic(&r, &omega(&r, n), &omega(&r, n - 1));
                assert!(rem.iter().all(|&c| c == 0));
                assert_eq!(q, cyclo_phi(&r, n));
            }
        }
    }

    #[test]
    fn basis_change_round_trip() {
        let r = PAdicRing::new(5, 6).unwrap();
        let b: Vec<u64> = (0..25u64)
            .map(|i| (i * i * 7919 + 3) % r.modulus())
            .collect();
        assert_eq!(group_to_poly(&r, &poly_to_group(&r, &b)), b);
    }

    #[test]
    fn lazy_and_eager_products_agree() {
        // 3^40 is close enough to 2^64 that the eager path is taken
        let big = PAdicRing::new(3, 40).unwrap();
        let a: Vec<u64> = (1..40u64).map(|i| big.modulus() - i * 1_000_003).collect();
        let b: Vec<u64> = (1..30u64).map(|i| big.modulus() / (i + 1)).collect();
        let fast = mul(&big, &a, &b);
        let mut slow = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                slow[i + j] = big.add_raw(slow[i + j], big.mul_raw(x, y));
            }
        }
        assert_eq!(fast, slow);
    }
}
