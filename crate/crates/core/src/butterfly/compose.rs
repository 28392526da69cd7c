use super::Butterfly;
use crate::error::{Error, Result};
use crate::fingroup::{pullback, quotient, GroupHom, Pullback, Quotient, Subgroup};

/// A composite butterfly with the pullback `P = E ×_{ρ,σ'} E'` and the quotient
/// `Q = P / N` it was built from.
#[derive(Clone, Debug)]
pub struct Composite {
    pub butterfly: Butterfly,
    pub pullback: Pullback,
    pub quotient: Quotient,
}

/// Composite `B ; B'` of butterflies `H → G → K`.
pub fn compose(b: &Butterfly, b2: &Butterfly) -> Result<Butterfly> {
    compose_detailed(b, b2).map(|c| c.butterfly)
}

pub fn compose_detailed(b: &Butterfly, b2: &Butterfly) -> Result<Composite> {
    if b.cod() != b2.dom() {
        return Err(Error::NotComposable(format!("{} -> {} then {} -> {}", b.dom(), b.cod(), b2.dom(), b2.cod())));
    }
    let pb = pullback(b.rho(), b2.sigma())?;
    let g = b.cod().g();
    let mut n: Vec<usize> = g
        .elements()
        .map(|a| {
            pb.index(b.iota().apply(a), b2.kappa().apply(a))
                .expect("(iota g, kappa' g) lies in the pullback")
        })
        .collect();
    n.sort_unstable();
    n.dedup();
    let n = Subgroup::new(pb.group.clone(), n)?;
    if !n.is_normal() {
        return Err(Error::NotNormal("image of <iota, kappa'> in the composition pullback".into()));
    }
    let q = quotient(&pb.group, &n)?;
    let e = q.group.clone();
    let proj = &q.projection;
    let kappa = GroupHom::new_unchecked(
        b.dom().g().clone(),
        e.clone(),
        b.dom()
            .g()
            .elements()
            .map(|a| proj.apply(pb.index(b.kappa().apply(a), 0).unwrap()))
            .collect(),
    )?;
    let iota = GroupHom::new_unchecked(
        b2.cod().g().clone(),
        e.clone(),
        b2.cod()
            .g()
            .elements()
            .map(|a| proj.apply(pb.index(0, b2.iota().apply(a)).unwrap()))
            .collect(),
    )?;
    let sigma = GroupHom::new_unchecked(
        e.clone(),
        b.dom().g0().clone(),
        q.representatives.iter().map(|&r| b.sigma().apply(pb.pair(r).0)).collect(),
    )?;
    let rho = GroupHom::new_unchecked(
        e.clone(),
        b2.cod().g0().clone(),
        q.representatives.iter().map(|&r| b2.rho().apply(pb.pair(r).1)).collect(),
    )?;
    let butterfly = Butterfly::new(b.dom().clone(), b2.cod().clone(), kappa, iota, sigma, rho)?;
    Ok(Composite {
        butterfly,
        pullback: pb,
        quotient: q,
    })
}
