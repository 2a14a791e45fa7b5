//! Automorphism groups of A-groups, by recursion along characteristic
//! complements.
//!
//! For G = A x| H with A a characteristic abelian p-subgroup, the
//! automorphisms stabilizing H embed into Aut(A) x Aut(H); their H-side
//! projection is cut out by representation transport over H/K (K the
//! subgroup generated by p-elements, which acts trivially), the A-side
//! fiber over the identity is an intertwining stabilizer, and all of Aut(G)
//! is recovered by adjoining inner automorphisms. Base cases: abelian
//! groups get the matrix generators directly, trivial-radical groups fall
//! back to the brute-force oracle.

use crate::abelian::aut_abelian_generators;
use crate::cayley::{
    is_agroup, quotient, solvable_radical, subgroup_generated_by_p_elements, CayleyGroup,
};
use crate::error::{Error, Result};
use crate::intertwine::intertwining_coset;
use crate::oracle::oracle_automorphisms;
use crate::perm::{Perm, PermGroup, TrackedHom};
use crate::repr::{conjugation_rep, ConjugationSplit};
use crate::structure::{characteristic_complement, CharComplement};
use crate::transport::{is_table_automorphism, transport_general, TransportInstance};
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    AbelianBase,
    BruteForceBase,
    Recursive,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::AbelianBase => write!(f, "abelian-base"),
            Method::BruteForceBase => write!(f, "brute-force-base"),
            Method::Recursive => write!(f, "recursive"),
        }
    }
}

pub struct AutResult {
    pub aut: PermGroup,
    pub method: Method,
    /// one line per recursion level, outermost first
    pub trace: Vec<String>,
    pub randomized: bool,
}

#[derive(Clone, Debug)]
pub struct AutConfig {
    pub seed: u64,
    pub oracle_budget: u128,
    /// verify every produced generator against the table (quadratic per
    /// generator; on by default)
    pub verify_generators: bool,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig {
            seed: 0,
            oracle_budget: crate::oracle::DEFAULT_ORACLE_BUDGET,
            verify_generators: true,
        }
    }
}

/// Automorphism group of an A-group as permutations of its elements.
pub fn aut_agroup(g: &CayleyGroup, cfg: &AutConfig) -> Result<AutResult> {
    if !is_agroup(g) {
        return Err(Error::NotAGroup {
            p: crate::cayley::agroup_violation(g).unwrap_or(0),
        });
    }
    aut_agroup_inner(g, cfg)
}

fn aut_agroup_inner(g: &CayleyGroup, cfg: &AutConfig) -> Result<AutResult> {
    let n = g.order();
    if n == 1 {
        return Ok(AutResult {
            aut: PermGroup::trivial(1),
            method: Method::AbelianBase,
            trace: vec!["order 1: trivial".into()],
            randomized: false,
        });
    }
    if g.is_abelian() {
        let basis = crate::abelian::AbelianBasis::new(Rc::new(g.clone()))?;
        let gens: Result<Vec<Perm>> =
            aut_abelian_generators(&basis).iter().map(|m| m.to_perm(&basis)).collect();
        let aut = PermGroup::new(n, gens?)?;
        return Ok(AutResult {
            aut,
            method: Method::AbelianBase,
            trace: vec![format!("order {n}: abelian-base")],
            randomized: false,
        });
    }
    let rad = solvable_radical(g);
    if rad.order() == 1 {
        let oracle = oracle_automorphisms(g, cfg.oracle_budget)?;
        return Ok(AutResult {
            aut: oracle.group,
            method: Method::BruteForceBase,
            trace: vec![format!("order {n}: brute-force-base |Aut| = {}", oracle.count)],
            randomized: false,
        });
    }
    let cc = characteristic_complement(g)?;
    let split = conjugation_rep(g, &cc.a, &cc.h)?;
    if split.h_group.order() >= n {
        return Err(Error::Inconsistency("recursion must shrink the group".into()));
    }
    let sub = aut_agroup_inner(&split.h_group, cfg)?;
    let (aut, randomized) = lift_aut(g, &cc, &split, &sub.aut, cfg)?;
    let mut trace = vec![format!(
        "order {n}: recursive split p={} |A|={} |H|={}",
        cc.p,
        cc.a.order(),
        cc.h.order()
    )];
    trace.extend(sub.trace);
    Ok(AutResult {
        aut,
        method: Method::Recursive,
        trace,
        randomized: randomized || sub.randomized,
    })
}

/// Assembles Aut(G) from Aut(H) for a characteristic complement G = A x| H.
pub fn lift_aut(
    g: &CayleyGroup,
    cc: &CharComplement,
    split: &ConjugationSplit,
    aut_h: &PermGroup,
    cfg: &AutConfig,
) -> Result<(PermGroup, bool)> {
    let n = g.order();
    let h_group = &split.h_group;
    let nh = h_group.order();
    // K = subgroup generated by p-elements of H; it acts trivially on A
    let k_sub = subgroup_generated_by_p_elements(h_group, cc.p);
    let (hbar, proj) = quotient(h_group, &k_sub)?;
    let hbar = Rc::new(hbar);
    let alpha_bar = split.rep.factor_through(hbar.clone(), &proj)?;
    // transversal: minimal preimage per coset of K
    let mut sigma = vec![usize::MAX; hbar.order()];
    for x in 0..nh {
        let c = proj.apply(x);
        if sigma[c] == usize::MAX {
            sigma[c] = x;
        }
    }
    // induced map Aut(H) -> Aut(H/K)
    let mut images = Vec::with_capacity(aut_h.generators().len());
    for eta in aut_h.generators() {
        let img: Vec<usize> = (0..hbar.order()).map(|c| proj.apply(eta.apply(sigma[c]))).collect();
        let img = Perm::from_images(img).map_err(|_| {
            Error::Inconsistency("automorphism does not preserve the p-element subgroup".into())
        })?;
        images.push(img);
    }
    let tracked = TrackedHom::new(aut_h.clone(), images, hbar.order())?;
    let hom_data = tracked.kernel_and_image()?;
    // transport inside the image
    let inst = TransportInstance::new(
        hbar.clone(),
        hom_data.image.clone(),
        alpha_bar.clone(),
        alpha_bar.clone(),
    )?;
    let stab = transport_general(&inst)?
        .ok_or_else(|| Error::Inconsistency("transport of a representation to itself is empty".into()))?;
    // generators of S_H: preimages of the transport stabilizer generators
    // plus the kernel generators
    let mut sh_pairs: Vec<(Perm, Option<Perm>)> = Vec::new(); // (eta on H, eta-bar)
    for gbar in stab.group.generators().iter().chain(std::iter::once(&stab.rep)) {
        if gbar.is_identity() {
            continue;
        }
        let eta = hom_data.preimage(gbar)?;
        sh_pairs.push((eta, Some(gbar.clone())));
    }
    for eta in hom_data.kernel.generators() {
        sh_pairs.push((eta.clone(), None));
    }
    // A-side stabilizer Aut(A, alpha ~ alpha)
    let mut randomized = false;
    let stab_a = intertwining_coset(&alpha_bar, &alpha_bar, cfg.seed)?
        .ok_or_else(|| Error::Inconsistency("self-intertwiner coset is empty".into()))?;
    randomized |= stab_a.randomized;
    // decompose G = A H uniquely
    let na = split.a_group.order();
    let mut a_of = vec![u32::MAX; n];
    let mut h_of = vec![u32::MAX; n];
    for ai in 0..na {
        for hi in 0..nh {
            let x = g.mul(split.a_embed[ai] as usize, split.h_embed[hi] as usize);
            if a_of[x] != u32::MAX {
                return Err(Error::Inconsistency("A H decomposition is not unique".into()));
            }
            a_of[x] = ai as u32;
            h_of[x] = hi as u32;
        }
    }
    let build_pair = |nu: &Perm, eta: &Perm| -> Result<Perm> {
        let img: Vec<usize> = (0..n)
            .map(|x| {
                let ai = nu.apply(a_of[x] as usize);
                let hi = eta.apply(h_of[x] as usize);
                g.mul(split.a_embed[ai] as usize, split.h_embed[hi] as usize)
            })
            .collect();
        Perm::from_images(img)
    };
    let mut gens: Vec<Perm> = Vec::new();
    let id_h = Perm::identity(nh);
    for nu in stab_a.coset.group.generators() {
        gens.push(build_pair(nu, &id_h)?);
    }
    if !stab_a.coset.rep.is_identity() {
        gens.push(build_pair(&stab_a.coset.rep, &id_h)?);
    }
    // pair generators (nu_eta, eta)
    for (eta, gbar) in &sh_pairs {
        let nu = match gbar {
            None => Perm::identity(na),
            Some(gbar) => {
                let twisted = alpha_bar.act_by_aut_h(&gbar.inverse());
                let coset = intertwining_coset(&alpha_bar, &twisted, cfg.seed)?.ok_or_else(
                    || Error::Inconsistency("transport promised an intertwiner that does not exist".into()),
                )?;
                randomized |= coset.randomized;
                coset.coset.rep.clone()
            }
        };
        gens.push(build_pair(&nu, eta)?);
    }
    // inner automorphisms of the group generators
    for x in g.generating_set() {
        let img: Vec<usize> = (0..n).map(|y| g.conj(y, x)).collect();
        gens.push(Perm::from_images(img)?);
    }
    if cfg.verify_generators {
        for p in &gens {
            if !is_table_automorphism(g, p) {
                return Err(Error::Inconsistency(
                    "assembled generator is not an automorphism".into(),
                ));
            }
        }
    }
    Ok((PermGroup::new(n, gens)?, randomized))
}
