//! Depth of `S/I` by cutting with generic linear forms.
//!
//! A linear form `l` is a nonzerodivisor on `A = S/I` exactly when
//! `H_{A/lA}(t) = (1-t) H_A(t)`. Slicing `x_last = Σ c_w x_w` keeps the Hilbert
//! numerator unchanged in that case, so matching numerators certify each step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hilbert::numerator;
use crate::error::Result;
use crate::groebner::GradedIdeal;
use crate::polyring::{Polynomial, Ring, TermOrder};

const ATTEMPTS: usize = 3;

/// Length of a maximal regular sequence of generic linear forms on `S/I`.
pub fn depth_by_regular_sequence(ideal: &GradedIdeal, seed: u64) -> Result<usize> {
    if ideal.is_unit() {
        return Ok(0);
    }
    let target = numerator(&ideal.lead_monomials());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = ideal.clone();
    let mut depth = 0;
    while current.ring().nvars() > 0 {
        let mut next = None;
        for _ in 0..ATTEMPTS {
            let cut = slice(&current, &mut rng)?;
            if numerator(&cut.lead_monomials()) == target {
                next = Some(cut);
                break;
            }
        }
        match next {
            Some(cut) => {
                depth += 1;
                current = cut;
            }
            None => break,
        }
    }
    Ok(depth)
}

/// `I + (x_last - Σ c_w x_w)` written in the first `n-1` variables.
pub fn slice(ideal: &GradedIdeal, rng: &mut impl Rng) -> Result<GradedIdeal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let names = ring.names()[..n - 1].to_vec();
    let target = Ring::new(names, ring.prime(), TermOrder::DegRevLex)?;
    let mut images: Vec<Polynomial> = (0..n - 1).map(|w| Polynomial::var(&target, w)).collect();
    let mut last = Polynomial::zero(&target);
    for w in 0..n - 1 {
        let c = rng.gen_range(1..ring.prime());
        last = last.add(&Polynomial::var(&target, w).scale(c))?;
    }
    images.push(last);
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&target, &images))
        .collect::<Result<Vec<_>>>()?;
    GradedIdeal::new(&target, gens.into_iter().filter(|g| !g.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{project_from_point, scroll_ideal, ProjectionPoint};

    fn scroll(s: &str) -> GradedIdeal {
        scroll_ideal(&s.parse().unwrap(), 32003).unwrap().1
    }

    #[test]
    fn twisted_cubic_is_cohen_macaulay() {
        assert_eq!(depth_by_regular_sequence(&scroll("S(3)"), 1).unwrap(), 2);
    }

    #[test]
    fn quartic_curve_has_depth_one() {
        let i = scroll("S(4)");
        let p = ProjectionPoint::parse("e2", 5, 32003).unwrap();
        let pr = project_from_point(&i, &p).unwrap();
        assert_eq!(depth_by_regular_sequence(&pr, 4).unwrap(), 1);
    }

    #[test]
    fn polynomial_ring_and_unit() {
        let r = Ring::standard(3, 32003).unwrap();
        let zero = GradedIdeal::new(&r, vec![]).unwrap();
        assert_eq!(depth_by_regular_sequence(&zero, 0).unwrap(), 3);
        let unit = GradedIdeal::parse(&r, &["1"]).unwrap();
        assert_eq!(depth_by_regular_sequence(&unit, 0).unwrap(), 0);
    }

    #[test]
    fn substitution_slices_a_variable() {
        let r = Ring::standard(2, 32003).unwrap();
        let i = GradedIdeal::parse(&r, &["x0*x1"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cut = slice(&i, &mut rng).unwrap();
        assert_eq!(cut.ring().nvars(), 1);
        assert_eq!(cut.generator_degrees(), vec![(2, 1)]);
    }
}
