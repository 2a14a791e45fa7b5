//! Representation-transporting automorphisms: given P <= Aut(H) and two
//! representations of H on an abelian p-group A (p coprime to |H|), compute
//! {phi in P : alpha^phi ~ beta} as a coset of the stabilizer.
//!
//! Elementary abelian case: decompose both representations, act on the set
//! of constituent classes, and reduce to string isomorphism over the class
//! set. General case: chain over the homocyclic components, reducing each to
//! the elementary case mod p.

use crate::cayley::CayleyGroup;
use crate::error::{Error, Result};
use crate::perm::{Coset, Perm, PermGroup};
use crate::repr::{ModRep, Representation};
use crate::strings::{coset_string_isomorphisms, GroupString};
use std::rc::Rc;

/// One transport problem: P <= Aut(H) acting on the points of H, and two
/// representations of H on the same based abelian p-group.
pub struct TransportInstance {
    pub h: Rc<CayleyGroup>,
    pub p_group: PermGroup,
    pub alpha: Representation,
    pub beta: Representation,
}

impl TransportInstance {
    pub fn new(
        h: Rc<CayleyGroup>,
        p_group: PermGroup,
        alpha: Representation,
        beta: Representation,
    ) -> Result<Self> {
        if p_group.degree() != h.order() {
            return Err(Error::DegreeMismatch(p_group.degree(), h.order()));
        }
        let p = alpha
            .basis
            .single_prime()
            .ok_or_else(|| Error::Precondition("coefficient group must be a p-group".into()))?;
        if h.order() % p as usize == 0 {
            return Err(Error::Precondition(format!(
                "transport requires p = {p} coprime to |H| = {}",
                h.order()
            )));
        }
        for g in p_group.generators() {
            if !is_table_automorphism(&h, g) {
                return Err(Error::Precondition(
                    "every generator of P must be an automorphism of H".into(),
                ));
            }
        }
        Ok(TransportInstance { h, p_group, alpha, beta })
    }
}

pub fn is_table_automorphism(g: &CayleyGroup, perm: &Perm) -> bool {
    if perm.degree() != g.order() || perm.apply(0) != 0 {
        return false;
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if perm.apply(g.mul(a, b)) != g.mul(perm.apply(a), perm.apply(b)) {
                return false;
            }
        }
    }
    true
}

/// Elementary abelian case of representation transport.
pub fn transport_elementary(inst: &TransportInstance) -> Result<Option<Coset>> {
    let alpha = ModRep::from_representation(&inst.alpha)?;
    let beta = ModRep::from_representation(&inst.beta)?;
    let start = Coset::from_group(inst.p_group.clone());
    transport_step(&inst.h, &start, &alpha, &beta)
}

/// General case: chain over homocyclic components; each step refines the
/// current coset by an elementary transport on A_i / p A_i.
pub fn transport_general(inst: &TransportInstance) -> Result<Option<Coset>> {
    let blocks = &inst.alpha.basis.blocks;
    if blocks.len() != 1 {
        return Err(Error::Precondition("coefficient group must be a p-group".into()));
    }
    let mut cur = Coset::from_group(inst.p_group.clone());
    for comp in 0..blocks[0].components() {
        let alpha_i = ModRep::from_component(&inst.alpha, comp)?;
        let beta_i = ModRep::from_component(&inst.beta, comp)?;
        match transport_step(&inst.h, &cur, &alpha_i, &beta_i)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// {phi in Q*sigma : alpha^phi ~ beta} for mod-p representations, via the
/// pull-back {q in Q : alpha^q ~ beta^{sigma^{-1}}} * sigma.
fn transport_step(
    h: &Rc<CayleyGroup>,
    cur: &Coset,
    alpha: &ModRep,
    beta: &ModRep,
) -> Result<Option<Coset>> {
    let sigma = cur.rep.clone();
    let beta_pulled = beta.act_by_aut_h(&sigma.inverse());
    Ok(group_transport(h, &cur.group, alpha, &beta_pulled)?.map(|c| Coset {
        group: c.group,
        rep: c.rep.then(&sigma),
    }))
}

fn group_transport(
    h: &Rc<CayleyGroup>,
    p_group: &PermGroup,
    alpha: &ModRep,
    beta: &ModRep,
) -> Result<Option<Coset>> {
    let nh = h.order();
    // decompose both sides into irreducible constituents
    let alpha_parts = alpha.decompose()?;
    let beta_parts = beta.decompose()?;
    let mut registry: Vec<ModRep> = Vec::new();
    let identify = |rep: &ModRep, registry: &mut Vec<ModRep>| -> usize {
        for (i, r) in registry.iter().enumerate() {
            if r.dim == rep.dim && r.irreducible_equivalent(rep).is_some() {
                return i;
            }
        }
        registry.push(rep.clone());
        registry.len() - 1
    };
    let alpha_classes: Vec<usize> =
        alpha_parts.iter().map(|(_, c)| identify(c, &mut registry)).collect();
    let beta_classes: Vec<usize> =
        beta_parts.iter().map(|(_, c)| identify(c, &mut registry)).collect();
    // close the class set under the action of the generators of P
    let gens = p_group.generators().to_vec();
    let mut gen_action: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < registry.len() {
        if registry.len() > nh {
            return Err(Error::Inconsistency(
                "more inequivalent irreducible constituents than |H|".into(),
            ));
        }
        for (gi, g) in gens.iter().enumerate() {
            let moved = registry[head].act_by_aut_h(g);
            let img = identify(&moved, &mut registry);
            debug_assert_eq!(gen_action[gi].len(), head);
            gen_action[gi].push(img);
        }
        head += 1;
    }
    let omega = registry.len();
    // multiplicity strings over the classes
    let mut alpha_mult = vec![0u32; omega];
    for &c in &alpha_classes {
        alpha_mult[c] += 1;
    }
    let mut beta_mult = vec![0u32; omega];
    for &c in &beta_classes {
        beta_mult[c] += 1;
    }
    // letters: nonzero multiplicities ascending get 1..l-1; multiplicity 0
    // is the background letter l
    let mut values: Vec<u32> = alpha_mult
        .iter()
        .chain(beta_mult.iter())
        .copied()
        .filter(|&m| m > 0)
        .collect();
    values.sort_unstable();
    values.dedup();
    let l = values.len() as u32 + 1;
    let letter_of = |m: u32| -> u32 {
        if m == 0 {
            l
        } else {
            values.iter().position(|&v| v == m).unwrap() as u32 + 1
        }
    };
    // combined domain: points of H, then the classes
    let degree = nh + omega;
    let mut combined_gens = Vec::with_capacity(gens.len());
    for (gi, g) in gens.iter().enumerate() {
        let mut img: Vec<usize> = (0..degree).collect();
        for x in 0..nh {
            img[x] = g.apply(x);
        }
        for c in 0..omega {
            img[nh + c] = nh + gen_action[gi][c];
        }
        combined_gens.push(Perm::from_images(img)?);
    }
    let combined = PermGroup::new(degree, combined_gens)?;
    let mut f1 = vec![l; degree];
    let mut f2 = vec![l; degree];
    for c in 0..omega {
        f1[nh + c] = letter_of(alpha_mult[c]);
        f2[nh + c] = letter_of(beta_mult[c]);
    }
    let f1 = GroupString::new(f1, l)?;
    let f2 = GroupString::new(f2, l)?;
    let start = Coset::from_group(combined);
    let iso = coset_string_isomorphisms(&start, &f1, &f2)?;
    // restrict back to the H part; the class action is determined by the
    // H part, so restriction is faithful
    match iso {
        None => Ok(None),
        Some(c) => {
            let gens: Result<Vec<Perm>> =
                c.group.generators().iter().map(|g| g.restrict(nh)).collect();
            let group = PermGroup::new(nh, gens?)?;
            Ok(Some(Coset { group, rep: c.rep.restrict(nh)? }))
        }
    }
}
