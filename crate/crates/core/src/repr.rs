//! Representations of a finite group on a finite abelian group, stored as
//! one endomorphism matrix per acting element, plus the semisimple toolkit
//! for elementary abelian coefficients: irreducible submodule enumeration,
//! equivalence testing, and decomposition into irreducible constituents.

use crate::abelian::{AbelianBasis, EndoMatrix, PMat};
use crate::cayley::{closure, CayleyGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::rc::Rc;

/// A homomorphism alpha: H -> Aut(A), A abelian with a fixed basis. Images
/// are stored per H-element as basis matrices.
#[derive(Clone)]
pub struct Representation {
    pub h: Rc<CayleyGroup>,
    pub basis: Rc<AbelianBasis>,
    pub images: Vec<EndoMatrix>,
}

impl Representation {
    pub fn new(
        h: Rc<CayleyGroup>,
        basis: Rc<AbelianBasis>,
        images: Vec<EndoMatrix>,
    ) -> Result<Self> {
        if images.len() != h.order() {
            return Err(Error::Precondition("one image per H-element required".into()));
        }
        let rep = Representation { h, basis, images };
        rep.validate()?;
        Ok(rep)
    }

    pub fn trivial(h: Rc<CayleyGroup>, basis: Rc<AbelianBasis>) -> Self {
        let t = basis.rank();
        let images = vec![EndoMatrix::identity(t); h.order()];
        Representation { h, basis, images }
    }

    fn validate(&self) -> Result<()> {
        if !self.images[0].eq(&EndoMatrix::identity(self.basis.rank())) {
            return Err(Error::NotHomomorphism("identity must act trivially".into()));
        }
        for m in &self.images {
            if !m.is_automorphism(&self.basis) {
                return Err(Error::NotHomomorphism("image is not an automorphism".into()));
            }
        }
        // homomorphism property; full check at small orders, generator pairs
        // plus spot checks above
        let n = self.h.order();
        if n <= 128 {
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.images[x].mul(&self.images[y], &self.basis);
                    if lhs != self.images[self.h.mul(x, y)] {
                        return Err(Error::NotHomomorphism(format!(
                            "representation fails at ({x},{y})"
                        )));
                    }
                }
            }
        } else {
            let gens = self.h.generating_set();
            for &g in &gens {
                for y in 0..n {
                    let lhs = self.images[g].mul(&self.images[y], &self.basis);
                    if lhs != self.images[self.h.mul(g, y)] {
                        return Err(Error::NotHomomorphism(format!(
                            "representation fails at ({g},{y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// alpha^psi(h) = psi^{-1} alpha(h) psi.
    pub fn act_by_aut_a(&self, psi: &EndoMatrix) -> Result<Representation> {
        let psi_inv = psi.inverse(&self.basis)?;
        let images = self
            .images
            .iter()
            .map(|m| psi_inv.mul(m, &self.basis).mul(psi, &self.basis))
            .collect();
        Ok(Representation { h: self.h.clone(), basis: self.basis.clone(), images })
    }

    /// alpha^phi(h) = alpha(h^{phi^{-1}}).
    pub fn act_by_aut_h(&self, phi: &Perm) -> Representation {
        let phi_inv = phi.inverse();
        let images =
            (0..self.h.order()).map(|x| self.images[phi_inv.apply(x)].clone()).collect();
        Representation { h: self.h.clone(), basis: self.basis.clone(), images }
    }

    pub fn kernel(&self) -> Subgroup {
        let id = EndoMatrix::identity(self.basis.rank());
        let elems: Vec<usize> =
            (0..self.h.order()).filter(|&x| self.images[x] == id).collect();
        crate::cayley::subgroup_from_elements(&self.h, &elems)
    }

    pub fn is_trivial(&self) -> bool {
        let id = EndoMatrix::identity(self.basis.rank());
        self.images.iter().all(|m| *m == id)
    }

    /// Pointwise equality of two representations of the same group.
    pub fn equals(&self, other: &Representation) -> bool {
        self.images == other.images
    }

    /// Factors the representation through a quotient of H: given the
    /// projection H -> Q with kernel acting trivially, returns the induced
    /// representation of Q.
    pub fn factor_through(&self, q: Rc<CayleyGroup>, proj: &GroupHom) -> Result<Representation> {
        let mut images: Vec<Option<EndoMatrix>> = vec![None; q.order()];
        for x in 0..self.h.order() {
            let qx = proj.apply(x);
            match &images[qx] {
                None => images[qx] = Some(self.images[x].clone()),
                Some(m) => {
                    if m != &self.images[x] {
                        return Err(Error::Precondition(
                            "kernel of projection does not act trivially".into(),
                        ));
                    }
                }
            }
        }
        let images: Option<Vec<EndoMatrix>> = images.into_iter().collect();
        let images = images
            .ok_or_else(|| Error::Precondition("projection is not surjective".into()))?;
        Ok(Representation { h: q, basis: self.basis.clone(), images })
    }
}

/// The conjugation representation of a complement H on a normal abelian
/// subgroup A inside an ambient group: alpha(h) is conjugation by h
/// restricted to A, i.e. a^{alpha(h)} = h^{-1} a h.
///
/// Returns the standalone groups, embeddings, basis, and representation.
pub struct ConjugationSplit {
    pub a_group: Rc<CayleyGroup>,
    pub a_embed: Vec<u32>,
    pub h_group: Rc<CayleyGroup>,
    pub h_embed: Vec<u32>,
    pub basis: Rc<AbelianBasis>,
    pub rep: Representation,
}

pub fn conjugation_rep(
    g: &CayleyGroup,
    a_sub: &Subgroup,
    h_sub: &Subgroup,
) -> Result<ConjugationSplit> {
    if !a_sub.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    if !a_sub.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let meet = a_sub.iter().filter(|&x| h_sub.contains(x)).count();
    if meet != 1 {
        return Err(Error::Precondition("A and H must intersect trivially".into()));
    }
    if a_sub.order() * h_sub.order() != g.order() {
        return Err(Error::Precondition("A H must cover G".into()));
    }
    let (a_group, a_embed) = a_sub.as_group(g)?;
    let (h_group, h_embed) = h_sub.as_group(g)?;
    let a_group = Rc::new(a_group);
    let h_group = Rc::new(h_group);
    let basis = Rc::new(AbelianBasis::new(a_group.clone())?);
    let mut back = vec![u32::MAX; g.order()];
    for (i, &e) in a_embed.iter().enumerate() {
        back[e as usize] = i as u32;
    }
    let t = basis.rank();
    let mut images = Vec::with_capacity(h_group.order());
    for hx in 0..h_group.order() {
        let amb_h = h_embed[hx] as usize;
        let mut gen_images = Vec::with_capacity(t);
        for &bg in &basis.gens {
            let conj = g.conj(a_embed[bg] as usize, amb_h);
            let local = back[conj];
            if local == u32::MAX {
                return Err(Error::NotNormal);
            }
            gen_images.push(local as usize);
        }
        images.push(EndoMatrix::from_images(&basis, &gen_images));
    }
    let rep = Representation::new(h_group.clone(), basis.clone(), images)?;
    Ok(ConjugationSplit { a_group, a_embed, h_group, h_embed, basis, rep })
}

/// A representation on an elementary abelian group, as matrices over F_p
/// per element of the acting group.
#[derive(Clone)]
pub struct ModRep {
    pub h: Rc<CayleyGroup>,
    pub p: u32,
    pub dim: usize,
    pub mats: Vec<PMat>,
}

impl ModRep {
    /// Whole-space representation of an elementary abelian basis.
    pub fn from_representation(rep: &Representation) -> Result<ModRep> {
        if !rep.basis.is_elementary() {
            return Err(Error::NotElementaryAbelian);
        }
        let p = rep.basis.single_prime().unwrap();
        let dim = rep.basis.rank();
        let mats = rep
            .images
            .iter()
            .map(|m| {
                let mut pm = PMat::zero(p, dim, dim);
                for r in 0..dim {
                    for c in 0..dim {
                        pm.set(r, c, m.get(r, c) % p);
                    }
                }
                pm
            })
            .collect();
        Ok(ModRep { h: rep.h.clone(), p, dim, mats })
    }

    /// alpha composed with the reduction onto homocyclic component `comp`
    /// mod p (one Lambda_i factor).
    pub fn from_component(rep: &Representation, comp: usize) -> Result<ModRep> {
        let blk = rep
            .basis
            .blocks
            .first()
            .ok_or_else(|| Error::Precondition("trivial basis".into()))?;
        if rep.basis.blocks.len() != 1 {
            return Err(Error::Precondition("component reduction needs a p-group".into()));
        }
        let idxs = &blk.idxs[comp];
        let dim = idxs.len();
        let p = blk.p;
        let mats = rep
            .images
            .iter()
            .map(|m| {
                let mut pm = PMat::zero(p, dim, dim);
                for (r, &ri) in idxs.iter().enumerate() {
                    for (c, &ci) in idxs.iter().enumerate() {
                        pm.set(r, c, m.get(ri, ci) % p);
                    }
                }
                pm
            })
            .collect();
        Ok(ModRep { h: rep.h.clone(), p, dim, mats })
    }

    pub fn trivial(h: Rc<CayleyGroup>, p: u32, dim: usize) -> ModRep {
        let mats = vec![PMat::identity(p, dim); h.order()];
        ModRep { h, p, dim, mats }
    }

    /// rho^phi(h) = rho(h^{phi^{-1}}).
    pub fn act_by_aut_h(&self, phi: &Perm) -> ModRep {
        let phi_inv = phi.inverse();
        let mats = (0..self.h.order()).map(|x| self.mats[phi_inv.apply(x)].clone()).collect();
        ModRep { h: self.h.clone(), p: self.p, dim: self.dim, mats }
    }

    fn apply_vec(&self, v: &[u32], h: usize) -> Vec<u32> {
        let m = &self.mats[h];
        let p = self.p as u64;
        (0..self.dim)
            .map(|c| {
                let mut acc = 0u64;
                for r in 0..self.dim {
                    acc += v[r] as u64 * m.get(r, c) as u64;
                }
                (acc % p) as u32
            })
            .collect()
    }

    /// The cyclic submodule generated by a vector, as a canonical rref
    /// basis of its span closure under the action.
    pub fn cyclic_submodule(&self, v: &[u32]) -> PMat {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for h in 0..self.h.order() {
            rows.push(self.apply_vec(v, h));
        }
        let mut m = PMat::zero(self.p, rows.len(), self.dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let r = m.rref();
        // keep only the nonzero rows
        let nz: Vec<usize> =
            (0..r.rows).filter(|&i| (0..r.cols).any(|j| r.get(i, j) != 0)).collect();
        let mut out = PMat::zero(self.p, nz.len(), self.dim);
        for (i, &ri) in nz.iter().enumerate() {
            for j in 0..r.cols {
                out.set(i, j, r.get(ri, j));
            }
        }
        out
    }

    /// All irreducible submodules, as canonical rref bases in deterministic
    /// order. Every irreducible submodule is cyclic, so enumerating the
    /// cyclic submodule of every nonzero vector finds them all; a cyclic
    /// submodule is irreducible iff each of its nonzero vectors generates
    /// all of it (checked via the memoized per-vector map).
    pub fn irreducible_submodules(&self) -> Vec<PMat> {
        let total = (self.p as u64).pow(self.dim as u32);
        let mut submodule_of: std::collections::HashMap<Vec<u32>, usize> =
            std::collections::HashMap::new();
        let mut distinct: Vec<PMat> = Vec::new();
        for rank in 1..total {
            let v = self.unrank_vector(rank);
            if submodule_of.contains_key(&v) {
                continue;
            }
            let w = self.cyclic_submodule(&v);
            let idx = distinct.iter().position(|d| *d == w).unwrap_or_else(|| {
                distinct.push(w.clone());
                distinct.len() - 1
            });
            submodule_of.insert(v, idx);
        }
        let mut irreducible = Vec::new();
        for (wi, w) in distinct.iter().enumerate() {
            let members = enumerate_row_space(w);
            let mut ok = true;
            for u in &members {
                if u.iter().all(|&x| x == 0) {
                    continue;
                }
                if submodule_of.get(u) != Some(&wi) {
                    ok = false;
                    break;
                }
            }
            if ok {
                irreducible.push(w.clone());
            }
        }
        irreducible
    }

    fn unrank_vector(&self, mut rank: u64) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        for i in 0..self.dim {
            v[i] = (rank % self.p as u64) as u32;
            rank /= self.p as u64;
        }
        v
    }

    /// The action restricted to an invariant subspace given by an rref
    /// basis, in that basis.
    pub fn restrict_to(&self, basis: &PMat) -> Result<ModRep> {
        let d = basis.rows;
        let mut mats = Vec::with_capacity(self.mats.len());
        for h in 0..self.h.order() {
            let mut m = PMat::zero(self.p, d, d);
            for r in 0..d {
                let row: Vec<u32> = (0..self.dim).map(|j| basis.get(r, j)).collect();
                let img = self.apply_vec(&row, h);
                let coords = express_in_rref(basis, &img).ok_or_else(|| {
                    Error::Inconsistency("subspace is not invariant".into())
                })?;
                for c in 0..d {
                    m.set(r, c, coords[c]);
                }
            }
            mats.push(m);
        }
        Ok(ModRep { h: self.h.clone(), p: self.p, dim: d, mats })
    }

    /// Greedy decomposition into irreducible constituents (Maschke case
    /// p not dividing |H|): grows a direct sum of irreducible submodules.
    pub fn decompose(&self) -> Result<Vec<(PMat, ModRep)>> {
        if self.h.order() % self.p as usize == 0 {
            return Err(Error::Precondition(
                "decomposition requires the coefficient prime to not divide |H|".into(),
            ));
        }
        let irreducibles = self.irreducible_submodules();
        let mut sum_basis = PMat::zero(self.p, 0, self.dim);
        let mut picked = Vec::new();
        while (sum_basis.rows) < self.dim {
            let mut advanced = false;
            for w in &irreducibles {
                // contained in current sum?
                let contained = (0..w.rows).all(|r| {
                    let row: Vec<u32> = (0..self.dim).map(|j| w.get(r, j)).collect();
                    express_in_rref(&sum_basis, &row).is_some()
                });
                if contained {
                    continue;
                }
                // irreducible not inside the sum meets it trivially
                let mut stacked = PMat::zero(self.p, sum_basis.rows + w.rows, self.dim);
                for r in 0..sum_basis.rows {
                    for j in 0..self.dim {
                        stacked.set(r, j, sum_basis.get(r, j));
                    }
                }
                for r in 0..w.rows {
                    for j in 0..self.dim {
                        stacked.set(sum_basis.rows + r, j, w.get(r, j));
                    }
                }
                if stacked.rank() != sum_basis.rows + w.rows {
                    return Err(Error::Inconsistency(
                        "irreducible outside the sum must meet it trivially".into(),
                    ));
                }
                sum_basis = canonical_rref(&stacked);
                picked.push((w.clone(), self.restrict_to(w)?));
                advanced = true;
                break;
            }
            if !advanced {
                return Err(Error::Inconsistency("decomposition stalled".into()));
            }
        }
        Ok(picked)
    }

    /// Equivalence test for irreducible representations: try extending
    /// u -> v linearly over the action for a fixed generating vector u and
    /// every candidate v. Returns an intertwiner L with
    /// rho1(h) L = L rho2(h) for all h, or None.
    pub fn irreducible_equivalent(&self, other: &ModRep) -> Option<PMat> {
        if self.dim != other.dim || self.p != other.p {
            return None;
        }
        if self.h.order() != other.h.order() {
            return None;
        }
        let d = self.dim;
        if d == 0 {
            return Some(PMat::zero(self.p, 0, 0));
        }
        // u = first standard basis vector; in an irreducible module every
        // nonzero vector generates
        let mut u = vec![0u32; d];
        u[0] = 1;
        // pick group elements whose u-images form a basis
        let mut hs: Vec<usize> = Vec::new();
        let mut bmat = PMat::zero(self.p, 0, d);
        for h in 0..self.h.order() {
            if bmat.rows == d {
                break;
            }
            let w = self.apply_vec(&u, h);
            let mut stacked = PMat::zero(self.p, bmat.rows + 1, d);
            for r in 0..bmat.rows {
                for j in 0..d {
                    stacked.set(r, j, bmat.get(r, j));
                }
            }
            for j in 0..d {
                stacked.set(bmat.rows, j, w[j]);
            }
            if stacked.rank() == bmat.rows + 1 {
                hs.push(h);
                bmat = stacked;
            }
        }
        if bmat.rows != d {
            return None; // not irreducible after all
        }
        let binv = square_from_rows(&bmat).inverse()?;
        let gens = self.h.generating_set();
        let total = (self.p as u64).pow(d as u32);
        for rank in 1..total {
            let v = other.unrank_vector(rank);
            // rows of C: v * rho2(h_i)
            let mut c = PMat::zero(self.p, d, d);
            for (i, &h) in hs.iter().enumerate() {
                let row = other.apply_vec(&v, h);
                for j in 0..d {
                    c.set(i, j, row[j]);
                }
            }
            let l = binv.mul(&c);
            if !l.is_invertible() {
                continue;
            }
            // intertwining on generators extends to the whole group
            let ok = gens
                .iter()
                .all(|&g| self.mats[g].mul(&l) == l.mul(&other.mats[g]));
            if ok && gens.is_empty() {
                return Some(l);
            }
            if ok {
                return Some(l);
            }
        }
        None
    }
}

fn square_from_rows(m: &PMat) -> PMat {
    debug_assert_eq!(m.rows, m.cols);
    m.clone()
}

/// Canonical rref with zero rows dropped.
pub fn canonical_rref(m: &PMat) -> PMat {
    let r = m.rref();
    let nz: Vec<usize> = (0..r.rows).filter(|&i| (0..r.cols).any(|j| r.get(i, j) != 0)).collect();
    let mut out = PMat::zero(m.p, nz.len(), m.cols);
    for (i, &ri) in nz.iter().enumerate() {
        for j in 0..r.cols {
            out.set(i, j, r.get(ri, j));
        }
    }
    out
}

/// Expresses a vector in the row space of an rref basis, if possible.
pub fn express_in_rref(basis: &PMat, v: &[u32]) -> Option<Vec<u32>> {
    let p = basis.p as u64;
    let mut rem: Vec<u32> = v.to_vec();
    let mut coords = vec![0u32; basis.rows];
    for r in 0..basis.rows {
        let pivot = (0..basis.cols).find(|&j| basis.get(r, j) != 0)?;
        let f = rem[pivot] as u64 * crate::abelian::mod_inverse(basis.get(r, pivot) as u64, p)? % p;
        coords[r] = f as u32;
        for j in 0..basis.cols {
            let s = (rem[j] as u64 + (p - f) * basis.get(r, j) as u64 % p) % p;
            rem[j] = s as u32;
        }
    }
    if rem.iter().all(|&x| x == 0) {
        Some(coords)
    } else {
        None
    }
}

/// All vectors in the row space of an rref basis.
pub fn enumerate_row_space(basis: &PMat) -> Vec<Vec<u32>> {
    let p = basis.p as u64;
    let d = basis.rows;
    let total = p.pow(d as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut rank in 0..total {
        let mut v = vec![0u32; basis.cols];
        for r in 0..d {
            let c = (rank % p) as u32;
            rank /= p;
            if c != 0 {
                for j in 0..basis.cols {
                    v[j] = ((v[j] as u64 + c as u64 * basis.get(r, j) as u64) % p) as u32;
                }
            }
        }
        out.push(v);
    }
    out
}

/// Converts an rref submodule basis into a subgroup of the underlying
/// elementary abelian Cayley group.
pub fn submodule_to_subgroup(basis: &AbelianBasis, w: &PMat) -> Result<Subgroup> {
    let gens: Vec<usize> = (0..w.rows)
        .map(|r| {
            let coords: Vec<u32> = (0..w.cols).map(|j| w.get(r, j)).collect();
            basis.elem_of(&coords)
        })
        .collect();
    closure(&basis.group, &gens)
}

/// Groups constituents into equivalence classes; returns the class index of
/// each constituent.
pub fn classify_constituents(constituents: &[ModRep]) -> (Vec<ModRep>, Vec<usize>) {
    let mut class_reps: Vec<ModRep> = Vec::new();
    let mut class_of = Vec::with_capacity(constituents.len());
    for c in constituents {
        let mut found = None;
        for (i, rep) in class_reps.iter().enumerate() {
            if rep.irreducible_equivalent(c).is_some() {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => class_of.push(i),
            None => {
                class_reps.push(c.clone());
                class_of.push(class_reps.len() - 1);
            }
        }
    }
    (class_reps, class_of)
}
