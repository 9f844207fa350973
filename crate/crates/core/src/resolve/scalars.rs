//! Presentations of graded modules over a subring: `S[y]/J` as an `S`-module on `{1, y}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ext::GradedModuleData;
use super::hilbert::numerator;
use crate::error::{Error, Result};
use crate::groebner::engine::{self, MTerm, ModOrder};
use crate::groebner::{FreeModule, FreeModuleElement, GradedIdeal, GradedSubmodule};
use crate::linalg::kernel_dense;
use crate::polyring::{LinearForm, Monomial, Polynomial, Ring, TermOrder};

/// Hilbert series numerator of `F_0 / M` over `(1-t)^n`, keyed by exponent.
pub fn module_hilbert_numerator(m: &GradedSubmodule) -> BTreeMap<i32, i64> {
    let leads = lead_monomials_by_component(m);
    let mut out = BTreeMap::new();
    for (c, &tw) in m.ambient.twists.iter().enumerate() {
        for (k, &a) in numerator(&leads[c]).iter().enumerate() {
            *out.entry(tw + k as i32).or_insert(0) += a;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn lead_monomials_by_component(m: &GradedSubmodule) -> Vec<Vec<Monomial>> {
    let mut leads = vec![Vec::new(); m.ambient.rank()];
    for v in m.gb_vectors() {
        leads[v[0].comp as usize].push(v[0].m);
    }
    leads
}

/// Hilbert function and linear annihilator of `F_0 / M` on a window.
pub fn module_data(m: &GradedSubmodule, window: (i32, i32)) -> Result<GradedModuleData> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "empty window {}..{}",
            lo, hi
        )));
    }
    let ring = m.ring().clone();
    let nv = ring.nvars();
    let f = ring.field();
    let leads = lead_monomials_by_component(m);
    let rank = m.ambient.rank();
    let standard = |c: usize, d: i32| -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        ring.monomials_of_degree(d as u32)
            .into_iter()
            .filter(|x| !leads[c].iter().any(|l| l.divides(x)))
            .collect()
    };
    let mut hilbert = BTreeMap::new();
    let mut eqs: BTreeMap<(usize, Monomial, usize, Monomial), Vec<(usize, u32)>> = BTreeMap::new();
    for n in lo..=hi {
        let mut dim = 0u64;
        for (c, &tw) in m.ambient.twists.iter().enumerate() {
            let basis = standard(c, n - tw);
            dim += basis.len() as u64;
            if n == hi {
                continue;
            }
            for u in basis {
                for v in 0..nv {
                    let mut entries = vec![Polynomial::zero(&ring); rank];
                    entries[c] = Polynomial::monomial(&ring, 1, u.mul(&Monomial::var(v)));
                    let nf = m.normal_form(&FreeModuleElement::new(entries));
                    for (cc, p) in nf.entries.iter().enumerate() {
                        for t in p.terms() {
                            eqs.entry((c, u, cc, t.m)).or_default().push((v, t.c));
                        }
                    }
                }
            }
        }
        hilbert.insert(n, dim);
    }
    let rows: Vec<Vec<u32>> = eqs
        .into_values()
        .map(|e| {
            let mut r = vec![0u32; nv];
            for (v, c) in e {
                r[v] = f.add(r[v], c);
            }
            r
        })
        .collect();
    let linear_annihilator = kernel_dense(f, &rows, nv)
        .into_iter()
        .map(LinearForm::new)
        .collect();
    Ok(GradedModuleData {
        window,
        hilbert,
        linear_annihilator,
        presentation: Some(m.clone()),
    })
}

/// The `S`-module `S[y]/J` on the generators `{1, y}`, `S` the ring of the other variables.
///
/// Relations are `{(f, g) in S^2 : f + g y in J}`, found by eliminating an auxiliary
/// component and then `y`. Fails if `1, y` do not generate.
pub fn restrict_scalars_presentation(
    j: &GradedIdeal,
    y: usize,
    window: (i32, i32),
) -> Result<GradedModuleData> {
    let sub = restrict_scalars(j, y)?;
    module_data(&sub, window)
}

/// Relation module of [`restrict_scalars_presentation`] inside `S ⊕ S(-1)`.
pub fn restrict_scalars(j: &GradedIdeal, y: usize) -> Result<GradedSubmodule> {
    let ring = j.ring();
    let n = ring.nvars();
    if y >= n || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "no variable x{} to eliminate",
            y
        )));
    }
    // y goes first in a block order
    let mut perm: Vec<usize> = vec![0; n];
    let mut pos = 1;
    for (v, slot) in perm.iter_mut().enumerate() {
        if v == y {
            *slot = 0;
        } else {
            *slot = pos;
            pos += 1;
        }
    }
    let mut names = vec![String::new(); n];
    for v in 0..n {
        names[perm[v]] = ring.names()[v].clone();
    }
    let block = Ring::new(names.clone(), ring.prime(), TermOrder::Block { front: 1 })?;
    let f = block.field();
    let mut ord = ModOrder::top(block.order(), 3);
    ord.levels[0] = 1;
    let twists = [0, 0, 1];
    let ym = Monomial::var(0);
    let mut gens: Vec<Vec<MTerm>> = vec![
        vec![
            MTerm {
                c: 1,
                m: Monomial::one(),
                comp: 0,
            },
            MTerm {
                c: 1,
                m: Monomial::one(),
                comp: 1,
            },
        ],
        vec![
            MTerm {
                c: 1,
                m: ym,
                comp: 0,
            },
            MTerm {
                c: 1,
                m: Monomial::one(),
                comp: 2,
            },
        ],
    ];
    for g in j.gens() {
        gens.push(
            g.terms()
                .iter()
                .map(|t| MTerm {
                    c: t.c,
                    m: t.m.permuted(&perm),
                    comp: 0,
                })
                .collect(),
        );
    }
    let gens = gens
        .into_iter()
        .map(|g| engine::canonical_vector(f, &ord, g))
        .collect();
    let gb = engine::groebner(&block, &ord, &twists, gens);
    let target_names: Vec<String> = names[1..].to_vec();
    let s: Arc<Ring> = Ring::new(target_names, ring.prime(), TermOrder::DegRevLex)?;
    let mut rels = Vec::new();
    for v in gb {
        if v.iter().any(|t| t.comp == 0 || t.m.exp(0) != 0) {
            continue;
        }
        let mut entries = vec![Polynomial::zero(&s); 2];
        for t in &v {
            let m = t.m.remove_var(0);
            let p = Polynomial::monomial(&s, t.c, m);
            entries[t.comp as usize - 1] = entries[t.comp as usize - 1].add(&p)?;
        }
        rels.push(FreeModuleElement::new(entries));
    }
    let sub = GradedSubmodule::new(FreeModule::new(&s, vec![0, 1]), rels)?;
    let sub = GradedSubmodule::new(FreeModule::new(&s, vec![0, 1]), sub.minimal_generators())?;
    // 1, y generate iff the Hilbert series agree: N_B (1 - t) = N_J
    let nb = module_hilbert_numerator(&sub);
    let mut lhs: BTreeMap<i32, i64> = BTreeMap::new();
    for (&e, &c) in &nb {
        *lhs.entry(e).or_insert(0) += c;
        *lhs.entry(e + 1).or_insert(0) -= c;
    }
    lhs.retain(|_, v| *v != 0);
    let nj: BTreeMap<i32, i64> = numerator(&j.lead_monomials())
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(k, c)| (k as i32, c))
        .collect();
    if lhs != nj {
        return Err(Error::Precondition(
            "the quotient ring is not generated by 1 and y over the subring".into(),
        ));
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::{free_resolution_module, ResolutionOptions};
    use crate::varieties::{project_from_point_with_center, scroll_ideal, ProjectionPoint};

    #[test]
    fn square_of_the_new_variable() {
        let r = Ring::standard(2, 32003).unwrap();
        let j = GradedIdeal::parse(&r, &["x1^2"]).unwrap();
        let d = restrict_scalars_presentation(&j, 1, (0, 3)).unwrap();
        // B = k[x0] ⊕ k[x0](-1), free
        assert!(d.presentation.as_ref().unwrap().gens().is_empty());
        assert_eq!(
            d.hilbert.values().copied().collect::<Vec<_>>(),
            vec![1, 2, 2, 2]
        );
        assert!(d.linear_annihilator.is_empty());
    }

    #[test]
    fn not_generated_by_one_and_y() {
        let r = Ring::standard(2, 32003).unwrap();
        let j = GradedIdeal::parse(&r, &["x1^3"]).unwrap();
        assert!(matches!(
            restrict_scalars(&j, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quartic_curve_over_p3() {
        let (_, i) = scroll_ideal(&"S(4)".parse().unwrap(), 32003).unwrap();
        let p = ProjectionPoint::parse("e2", 5, 32003).unwrap();
        let pr = project_from_point_with_center(&i, &p, None).unwrap();
        assert_eq!(pr.center, 2);
        let sub = restrict_scalars(&i, 2).unwrap();
        let c = free_resolution_module(&sub, &ResolutionOptions::default()).unwrap();
        let b = c.betti();
        assert_eq!((b.get(0, 0), b.get(0, 1)), (1, 1));
        assert_eq!(b.total(1), 5);
        assert_eq!(b.total(2), 3);
        assert_eq!(b.pd(), 2);
    }
}
