//! Independent invariants used to check every closed form: Kauffman bracket,
//! Jones polynomial, determinant, triviality and the determinant Arf rule.
//!
//! Triviality by Jones polynomial is an oracle and not a theorem. It is sound
//! at the sizes used here, which stay far below any known nontrivial knot or
//! link with trivial Jones polynomial.

mod bracket;
mod zeta;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{continued_fraction, ConwayWord};
use crate::diagram::PlanarDiagram;
use crate::poly::LaurentPoly;

pub use bracket::{a_smoothing, b_smoothing, loop_value};

/// Largest diagram the oracles accept.
pub const MAX_ORACLE_CROSSINGS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("diagram has {0} crossings; the oracle budget is {MAX_ORACLE_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error("input has {0} components; a knot was required")]
    NotAKnot(usize),
}

fn guard(d: &PlanarDiagram) -> Result<(), OracleError> {
    if d.crossing_count() > MAX_ORACLE_CROSSINGS {
        return Err(OracleError::TooManyCrossings(d.crossing_count()));
    }
    Ok(())
}

/// Kauffman bracket in `A`, normalized so the round unknot is `1`.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, OracleError> {
    guard(d)?;
    let delta = loop_value();
    let sum = bracket::state_sum(d);
    let mut total = sum;
    for _ in 0..d.free_loops() {
        total = &total * &delta;
    }
    if d.crossing_count() == 0 {
        return Ok(delta.pow(d.free_loops() as u32 - 1));
    }
    Ok(total.div_exact(&delta).expect("every state has at least one loop"))
}

/// Jones polynomial stored in `s = t^(1/2)`, so links with an even number of
/// components have odd exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JonesPoly(pub LaurentPoly);

impl JonesPoly {
    pub fn unknot() -> Self {
        JonesPoly(LaurentPoly::one())
    }

    /// Jones polynomial of the `k`-component unlink, `(-s - 1/s)^(k-1)`.
    pub fn unlink(components: usize) -> Self {
        let factor = LaurentPoly::from_terms([(1, -1), (-1, -1)]);
        JonesPoly(factor.pow(components.saturating_sub(1) as u32))
    }

    /// The polynomial in `t` when every exponent is even (knots).
    pub fn in_t(&self) -> Option<LaurentPoly> {
        self.0.compress_exponents(2)
    }

    /// Value at `t = t^-1`.
    pub fn mirrored(&self) -> JonesPoly {
        JonesPoly(self.0.substitute_power(-1))
    }

    /// Rendering in `t` with half-integer exponents written as `k/2`.
    pub fn display(&self) -> String {
        if let Some(p) = self.in_t() {
            return p.display_in("t");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.0.terms().enumerate() {
            if i > 0 {
                out.push_str(if c < 0 { " - " } else { " + " });
            } else if c < 0 {
                out.push('-');
            }
            let a = c.abs();
            let coeff = if a == 1 { String::new() } else { format!("{a}*") };
            out.push_str(&format!("{coeff}t^({e}/2)"));
        }
        out
    }
}

/// `(-A^3)^(-w) <D>` with `t = A^-4`.
pub fn jones(d: &PlanarDiagram) -> Result<JonesPoly, OracleError> {
    let bracket = kauffman_bracket(d)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * w as i32);
    let f = if sign < 0 { -&f } else { f };
    // A^e = s^(-e/2)
    let s = f.compress_exponents(2).expect("bracket exponents share parity").substitute_power(-1);
    Ok(JonesPoly(s))
}

/// `|V(-1)|`, from the bracket evaluated exactly at a primitive 8th root of unity.
pub fn determinant(d: &PlanarDiagram) -> Result<u64, OracleError> {
    let bracket = kauffman_bracket(d)?;
    Ok(zeta::abs_at_eighth_root(&bracket))
}

pub fn determinant_of_word(w: &ConwayWord) -> Result<u64, OracleError> {
    determinant(&PlanarDiagram::from_word(w))
}

/// Whether the diagram represents the unknot or the unlink with the same
/// number of components.
pub fn is_trivial(d: &PlanarDiagram) -> Result<bool, OracleError> {
    Ok(jones(d)? == JonesPoly::unlink(d.component_count()))
}

/// Arf invariant of a knot: `0` iff the determinant is `±1 mod 8`.
pub fn arf_oracle(d: &PlanarDiagram) -> Result<u8, OracleError> {
    if d.component_count() != 1 {
        return Err(OracleError::NotAKnot(d.component_count()));
    }
    Ok(arf_from_determinant(determinant(d)?))
}

pub fn arf_from_determinant(det: u64) -> u8 {
    if matches!(det % 8, 1 | 7) { 0 } else { 1 }
}

/// Triviality of a standard diagram read off its signed twist counts.
///
/// Switching crossings inside a twist region cancels them in pairs, so a
/// changed standard diagram is the rational link of its signed twist
/// counts; it is trivial iff that continued fraction has numerator `0`
/// (two-component unlink) or `±1` (unknot). `None` for diagrams not built
/// from a word.
pub fn twist_trivial(d: &PlanarDiagram) -> Option<bool> {
    let sums = d.twist_sums()?;
    Some(continued_fraction(sums).0.abs() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RegionSelection;
    use proptest::prelude::*;

    fn d(v: &[u32]) -> PlanarDiagram {
        PlanarDiagram::from_word(&ConwayWord::new(v.to_vec()).unwrap())
    }

    /// Plain 2^n state sum, independent of the frontier sweep.
    fn naive_bracket(dg: &PlanarDiagram) -> LaurentPoly {
        let n = dg.crossing_count();
        let delta = loop_value();
        let mut total = LaurentPoly::zero();
        for state in 0u32..(1 << n) {
            let mut parent: Vec<usize> = (0..4 * n).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let join = |p: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(p, a), find(p, b));
                p[ra] = rb;
            };
            let mut exp = 0i32;
            for (c, x) in dg.crossings().iter().enumerate() {
                for s in 0..4u8 {
                    let q = x.next[s as usize];
                    join(&mut parent, 4 * c + s as usize, 4 * q.crossing + q.slot as usize);
                }
                let u = if x.over_even { 1 } else { 0 };
                let pairs = if state >> c & 1 == 0 {
                    exp += 1;
                    a_smoothing(u)
                } else {
                    exp -= 1;
                    b_smoothing(u)
                };
                for (a, b) in pairs {
                    join(&mut parent, 4 * c + a as usize, 4 * c + b as usize);
                }
            }
            let mut roots: Vec<usize> = (0..4 * n).map(|i| find(&mut parent, i)).collect();
            roots.sort_unstable();
            roots.dedup();
            let loops = roots.len() + dg.free_loops();
            total = &total + &delta.pow(loops as u32 - 1).shift(exp);
        }
        total
    }

    #[test]
    fn crossingless_values() {
        assert_eq!(kauffman_bracket(&PlanarDiagram::unknot(1)).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&PlanarDiagram::unknot(1)).unwrap(), JonesPoly::unknot());
        let two = jones(&PlanarDiagram::unknot(2)).unwrap();
        assert_eq!(two, JonesPoly(LaurentPoly::from_terms([(1, -1), (-1, -1)])));
        assert_eq!(determinant(&PlanarDiagram::unknot(1)).unwrap(), 1);
    }

    #[test]
    fn one_crossing_curl() {
        let b = kauffman_bracket(&d(&[1])).unwrap();
        assert!(b == LaurentPoly::monomial(-1, 3) || b == LaurentPoly::monomial(-1, -3), "{b}");
        assert!(is_trivial(&d(&[1])).unwrap());
    }

    #[test]
    fn trefoil() {
        let t = d(&[3]);
        assert_eq!(kauffman_bracket(&t).unwrap().span(), 12);
        let v = jones(&t).unwrap().in_t().unwrap();
        let left = LaurentPoly::from_terms([(-4, -1), (-3, 1), (-1, 1)]);
        let right = left.substitute_power(-1);
        assert!(v == left || v == right, "{v}");
        assert_eq!(determinant(&t).unwrap(), 3);
        assert!(!is_trivial(&t).unwrap());
    }

    #[test]
    fn figure_eight_and_friends() {
        assert_eq!(determinant(&d(&[2, 2])).unwrap(), 5);
        assert_eq!(determinant(&d(&[5])).unwrap(), 5);
        assert!(!is_trivial(&d(&[2, 2])).unwrap());
        assert!(!is_trivial(&d(&[5])).unwrap());
        assert_eq!(arf_oracle(&d(&[2, 2])).unwrap(), 1);
        assert_eq!(arf_oracle(&d(&[2, 1, 3])).unwrap(), 1);
        assert_eq!(arf_oracle(&d(&[3, 3])), Err(OracleError::NotAKnot(2)));
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let v = jones(&d(&[2, 2])).unwrap();
        assert_eq!(v, v.mirrored());
    }

    #[test]
    fn equivalent_words_share_jones() {
        // the trefoil in three different 2-bridge forms
        let a = jones(&d(&[3])).unwrap();
        let b = jones(&d(&[2, 1])).unwrap();
        let c = jones(&d(&[1, 1, 1])).unwrap();
        assert!(a == b || a == b.mirrored());
        assert!(a == c || a == c.mirrored());
        // Hopf link two ways
        assert_eq!(jones(&d(&[2])).unwrap().0.span(), jones(&d(&[1, 1])).unwrap().0.span());
    }

    #[test]
    fn budget_guard() {
        let big = d(&[25]);
        assert_eq!(jones(&big), Err(OracleError::TooManyCrossings(25)));
    }

    fn arb_word(max_len: usize, max_entry: u32) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1..=max_entry, 1..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sweep_matches_state_sum(w in arb_word(4, 3), flips in prop::collection::vec(any::<bool>(), 12)) {
            prop_assume!(w.iter().sum::<u32>() <= 10);
            let dg = d(&w);
            let mut e = bitvec::bitvec![0; dg.crossing_count()];
            for (i, f) in flips.iter().take(dg.crossing_count()).enumerate() {
                e.set(i, *f);
            }
            let dg = dg.switch_crossings(&e);
            let fast = kauffman_bracket(&dg).unwrap();
            let slow = naive_bracket(&dg);
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn mirror_inverts_jones(w in arb_word(4, 4)) {
            prop_assume!(w.iter().sum::<u32>() <= 12);
            let dg = d(&w);
            prop_assert_eq!(jones(&dg.mirror()).unwrap(), jones(&dg).unwrap().mirrored());
        }

        #[test]
        fn determinant_is_fraction_numerator(w in arb_word(5, 5)) {
            prop_assume!(w.iter().sum::<u32>() <= 14);
            let word = ConwayWord::new(w).unwrap();
            prop_assert_eq!(determinant_of_word(&word).unwrap(), word.fraction().0);
        }

        #[test]
        fn twist_route_agrees_with_jones(w in arb_word(4, 4), picks in prop::collection::vec(0usize..20, 0..4)) {
            prop_assume!(w.iter().sum::<u32>() <= 12);
            let dg = d(&w);
            let faces: Vec<usize> = picks.into_iter().filter(|&f| f < dg.face_count()).collect();
            let sel = RegionSelection::from_faces(&dg, faces);
            let changed = dg.region_crossing_change(&sel).unwrap();
            prop_assert_eq!(twist_trivial(&changed).unwrap(), is_trivial(&changed).unwrap());
        }

        #[test]
        fn bracket_survives_double_change(w in arb_word(4, 4), picks in prop::collection::vec(0usize..20, 0..4)) {
            prop_assume!(w.iter().sum::<u32>() <= 12);
            let dg = d(&w);
            let faces: Vec<usize> = picks.into_iter().filter(|&f| f < dg.face_count()).collect();
            let sel = RegionSelection::from_faces(&dg, faces);
            let back = dg.region_crossing_change(&sel).unwrap().region_crossing_change(&sel).unwrap();
            prop_assert_eq!(kauffman_bracket(&back).unwrap(), kauffman_bracket(&dg).unwrap());
        }
    }
}
