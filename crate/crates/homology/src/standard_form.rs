use serde::Serialize;

use crate::HomologyError;
pub use pillowcase_core::is_prime;

/// A boundary twist: side 2 with twist `q` sends `(a, b, c)` to
/// `(a, b − aq, c − pq)`; side 1 with twist `n` sends it to `(a − np, b − nc, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistMove {
    pub side: u8,
    pub twist: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardFormResult {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub p: i64,
    /// Moves in the order they were applied.
    pub twist_moves: Vec<TwistMove>,
    pub orientation_reversed: bool,
}

fn apply(m: TwistMove, (a, b, c): (i64, i64, i64), p: i64) -> (i64, i64, i64) {
    match m.side {
        1 => (a - m.twist * p, b - m.twist * c, c),
        _ => (a, b - m.twist * a, c - m.twist * p),
    }
}

fn unapply(m: TwistMove, t: (i64, i64, i64), p: i64) -> (i64, i64, i64) {
    apply(TwistMove { twist: -m.twist, ..m }, t, p)
}

impl StandardFormResult {
    pub fn tuple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// Undoes the recorded moves, recovering the input tuple.
    pub fn replay(&self) -> (i64, i64, i64) {
        let mut t = self.tuple();
        let (side1, side2): (Vec<&TwistMove>, Vec<&TwistMove>) = self.twist_moves.iter().partition(|m| m.side == 1);
        for m in side1.iter().rev() {
            t = unapply(**m, t, self.p);
        }
        if self.orientation_reversed {
            t = (-t.0, t.1, -t.2);
        }
        for m in side2.iter().rev() {
            t = unapply(**m, t, self.p);
        }
        t
    }

    /// Every intermediate tuple, input first.
    pub fn trajectory(&self) -> Vec<(i64, i64, i64)> {
        let mut t = self.replay();
        let mut out = vec![t];
        for m in self.twist_moves.iter().filter(|m| m.side == 2) {
            t = apply(*m, t, self.p);
            out.push(t);
        }
        if self.orientation_reversed {
            t = (-t.0, t.1, -t.2);
            out.push(t);
        }
        for m in self.twist_moves.iter().filter(|m| m.side == 1) {
            t = apply(*m, t, self.p);
            out.push(t);
        }
        out
    }
}

/// Normalizes a gluing `μ1 = aμ2 + bλ2, λ1 = pμ2 + cλ2` by boundary twists
/// to `0 ≤ b < c < p`, or `c ≤ p/2` when orientation reversal is allowed.
pub fn standard_form_reduce(a: i64, b: i64, c: i64, p: i64, allow_reversal: bool) -> Result<StandardFormResult, HomologyError> {
    if !is_prime(p) {
        return Err(HomologyError::NotPrime(p));
    }
    let det = a as i128 * c as i128 - b as i128 * p as i128;
    if det != -1 {
        return Err(HomologyError::Determinant(det));
    }
    let mut moves = Vec::new();
    let mut q = c.div_euclid(p);
    let mut r = c.rem_euclid(p);
    if allow_reversal && 2 * r > p {
        q += 1;
        r -= p;
    }
    let mut t = (a, b, c);
    if q != 0 {
        let m = TwistMove { side: 2, twist: q };
        t = apply(m, t, p);
        moves.push(m);
    }
    debug_assert_eq!(t.2, r);
    let reversed = t.2 < 0;
    if reversed {
        t = (-t.0, t.1, -t.2);
    }
    let n = t.1.div_euclid(t.2);
    if n != 0 {
        let m = TwistMove { side: 1, twist: n };
        t = apply(m, t, p);
        moves.push(m);
    }
    Ok(StandardFormResult { a: t.0, b: t.1, c: t.2, p, twist_moves: moves, orientation_reversed: reversed })
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    use num_integer::Integer;
    let e = x.rem_euclid(m).extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// The `(p−1)/2` standard tuples with `1 ≤ c ≤ (p−1)/2`.
pub fn enumerate_standard_tuples(p: i64) -> Result<Vec<(i64, i64, i64)>, HomologyError> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(HomologyError::NotOddPrime(p));
    }
    Ok((1..=(p - 1) / 2)
        .map(|c| {
            let b = if c == 1 { 0 } else { mod_inverse(p, c) };
            ((b * p - 1) / c, b, c)
        })
        .collect())
}
