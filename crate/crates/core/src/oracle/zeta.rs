//! Exact arithmetic in `Z[z]` with `z^4 = -1` (a primitive 8th root of unity).

use crate::poly::LaurentPoly;

type Cyclo = [i128; 4];

fn power(e: i32) -> Cyclo {
    let r = e.rem_euclid(8) as usize;
    let mut out = [0; 4];
    if r < 4 {
        out[r] = 1;
    } else {
        out[r - 4] = -1;
    }
    out
}

fn mul(a: &Cyclo, b: &Cyclo) -> Cyclo {
    let mut out = [0i128; 4];
    for i in 0..4 {
        for j in 0..4 {
            let v = a[i] * b[j];
            if i + j < 4 {
                out[i + j] += v;
            } else {
                out[i + j - 4] -= v;
            }
        }
    }
    out
}

/// Complex conjugation, `z -> z^-1 = -z^3`.
fn conj(a: &Cyclo) -> Cyclo {
    [a[0], -a[3], -a[2], -a[1]]
}

fn eval(p: &LaurentPoly) -> Cyclo {
    let mut out = [0i128; 4];
    for (e, c) in p.terms() {
        let z = power(e);
        for k in 0..4 {
            out[k] += i128::from(c) * z[k];
        }
    }
    out
}

/// `|p(z)|` for a polynomial whose value at `z` has integral modulus.
pub(super) fn abs_at_eighth_root(p: &LaurentPoly) -> u64 {
    let v = eval(p);
    let norm = mul(&v, &conj(&v));
    assert!(norm[1] == 0 && norm[2] == 0 && norm[3] == 0, "modulus squared is not an integer: {norm:?}");
    let n = u128::try_from(norm[0]).expect("norm is non-negative");
    let r = (n as f64).sqrt().round() as u128;
    let r = (r.saturating_sub(2)..=r + 2).find(|x| x * x == n).expect("bracket modulus is an integer");
    r as u64
}
