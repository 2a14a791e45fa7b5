//! Permutation groups with deterministic stabilizer chains.
//!
//! Products act left to right: `x^(f*g) = (x^f)^g`, written `f.then(g)`.
//! Chains store explicit transversal permutations (degrees here stay in the
//! low thousands). A chain may be seeded with a forced base prefix, which is
//! how pointwise stabilizers and homomorphism kernels are read off.

use crate::error::{Error, Result};
use rand::Rng;
use std::cell::OnceCell;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    img: Vec<u32>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.img)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n as u32).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, order: n });
            }
            if seen[x] {
                return Err(Error::Precondition(format!("duplicate image {x}")));
            }
            seen[x] = true;
        }
        Ok(Perm { img: img.into_iter().map(|x| x as u32).collect() })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// self followed by other.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Perm { img }
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.img.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    /// Restriction to an initial segment 0..m, which must be invariant.
    pub fn restrict(&self, m: usize) -> Result<Perm> {
        let mut img = Vec::with_capacity(m);
        for x in 0..m {
            let y = self.apply(x);
            if y >= m {
                return Err(Error::Inconsistency("segment not invariant under permutation".into()));
            }
            img.push(y as u32);
        }
        Ok(Perm { img })
    }
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// orbit points in discovery order; orbit[0] = base
    orbit: Vec<u32>,
    /// transversal: reps[i] maps base to orbit[i]
    reps: Vec<Perm>,
    /// point -> orbit position, or -1
    pos: Vec<i32>,
    /// unprocessed (orbit position, generator index) pairs
    pending: Vec<(u32, u32)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut pos = vec![-1i32; degree];
        pos[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u32],
            reps: vec![Perm::identity(degree)],
            pos,
            pending: Vec::new(),
        }
    }

    fn push_gen(&mut self, g: Perm) {
        let gi = self.gens.len() as u32;
        for i in 0..self.orbit.len() {
            self.pending.push((i as u32, gi));
        }
        self.gens.push(g);
        self.extend_orbit();
    }

    fn extend_orbit(&mut self) {
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head] as usize;
            for (gi, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.pos[y] < 0 {
                    self.pos[y] = self.orbit.len() as i32;
                    let rep = self.reps[self.pos[x] as usize].then(g);
                    self.orbit.push(y as u32);
                    self.reps.push(rep);
                    let newpos = (self.orbit.len() - 1) as u32;
                    for gj in 0..self.gens.len() as u32 {
                        self.pending.push((newpos, gj));
                    }
                    let _ = gi;
                }
            }
            head += 1;
        }
    }
}

/// A stabilizer chain: deterministic Schreier-Sims with explicit
/// transversals. Levels may be pre-created for a forced base prefix.
pub struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    pub fn new(degree: usize, forced_base: &[usize]) -> Self {
        let levels = forced_base.iter().map(|&b| Level::new(b, degree)).collect();
        Chain { degree, levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sift g through levels starting at `start`; returns the residue and
    /// the level where sifting stopped.
    fn strip(&self, start: usize, g: &Perm) -> (Perm, usize) {
        let mut h = g.clone();
        for j in start..self.levels.len() {
            let lvl = &self.levels[j];
            let x = h.apply(lvl.base);
            if lvl.pos[x] < 0 {
                return (h, j);
            }
            h = h.then(&lvl.reps[lvl.pos[x] as usize].inverse());
            debug_assert_eq!(h.apply(lvl.base), lvl.base);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = self.strip(0, g);
        j == self.levels.len() && res.is_identity()
    }

    /// Inserts a generator; returns true if the group grew.
    pub fn insert(&mut self, g: Perm) -> bool {
        if g.degree() != self.degree {
            panic!("degree mismatch in chain insert");
        }
        let before = self.order();
        self.insert_at(0, g);
        self.process();
        self.order() > before
    }

    fn insert_at(&mut self, start: usize, g: Perm) {
        let (res, j) = self.strip(start, &g);
        if res.is_identity() {
            return;
        }
        if j == self.levels.len() {
            let base = res.first_moved().expect("non-identity residue moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        // the residue fixes every base point before level `start` as well as
        // the ones it passed, so it is a valid strong generator for all
        // levels start..=j
        for lvl in start..=j.min(self.levels.len() - 1) {
            self.levels[lvl].push_gen(res.clone());
        }
    }

    /// Processes pending Schreier generators until the chain is complete.
    fn process(&mut self) {
        loop {
            let mut did_work = false;
            for j in 0..self.levels.len() {
                while let Some((pi, gi)) = self.levels[j].pending.pop() {
                    did_work = true;
                    let lvl = &self.levels[j];
                    let u = &lvl.reps[pi as usize];
                    let s = &lvl.gens[gi as usize];
                    let target = s.apply(lvl.orbit[pi as usize] as usize);
                    let u_t = &lvl.reps[lvl.pos[target] as usize];
                    let schreier = u.then(s).then(&u_t.inverse());
                    if !schreier.is_identity() {
                        self.insert_at(j + 1, schreier);
                    }
                }
            }
            if !did_work {
                break;
            }
        }
    }

    /// Strong generators of the group fixing the first `k` base points.
    /// With a forced base prefix of length >= k this is the pointwise
    /// stabilizer of those points.
    pub fn level_gens(&self, k: usize) -> Vec<Perm> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.levels[k].gens.clone()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn base_point(&self, level: usize) -> usize {
        self.levels[level].base
    }

    /// Finds the element rep_{L-1} ... rep_0 whose base images match the
    /// prescription on the first `k` (forced) levels, taking the identity in
    /// the deeper part. `want(l)` gives the desired image of base point l.
    pub fn element_with_base_images<F>(&self, k: usize, want: F) -> Result<Perm>
    where
        F: Fn(usize) -> usize,
    {
        let mut tail = Perm::identity(self.degree);
        let mut tail_inv = Perm::identity(self.degree);
        for l in 0..k.min(self.levels.len()) {
            let lvl = &self.levels[l];
            let desired = tail_inv.apply(want(l));
            if lvl.pos[desired] < 0 {
                return Err(Error::NotInImage);
            }
            let rep = &lvl.reps[lvl.pos[desired] as usize];
            tail = rep.then(&tail);
            tail_inv = tail_inv.then(&rep.inverse());
        }
        Ok(tail)
    }

    /// All group elements in deterministic order; None if the order exceeds
    /// the cap.
    pub fn elements_capped(&self, cap: usize) -> Option<Vec<Perm>> {
        if self.order() > cap as u128 {
            return None;
        }
        let mut elems = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lvl.orbit.len());
            for rep in &lvl.reps {
                for e in &elems {
                    next.push(e.then(rep));
                }
            }
            // e ranges over the deeper group, rep over this level: rep
            // applied last, matching strip factorization
            elems = next;
        }
        Some(elems)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lvl in self.levels.iter().rev() {
            let i = rng.gen_range(0..lvl.reps.len());
            g = g.then(&lvl.reps[i]);
        }
        g
    }
}

/// A permutation group given by generators; the stabilizer chain is built
/// lazily on first use and cached. Construction must finish before an
/// instance is shared (the cache is not thread-safe).
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceCell<Chain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain: OnceCell::new() }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, {} gens)", self.degree, self.gens.len())
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, gens, chain: OnceCell::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: OnceCell::new() }
    }

    /// Symmetric group on the full domain.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(Perm::from_images(t).unwrap());
        }
        if degree >= 3 {
            let c: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(Perm::from_images(c).unwrap());
        }
        PermGroup { degree, gens, chain: OnceCell::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| {
            let mut chain = Chain::new(self.degree, &[]);
            for g in &self.gens {
                chain.insert(g.clone());
            }
            chain
        })
    }

    pub fn order(&self) -> u128 {
        if self.gens.is_empty() {
            1
        } else {
            self.chain().order()
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        if g.is_identity() {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        self.chain().contains(g)
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(p);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit partition of the whole domain, each orbit sorted, ordered by
    /// minimum point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !assigned[x] {
                let orb = self.orbit(x);
                for &p in &orb {
                    assigned[p] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    /// The transporter {pi in P : x^pi = y} as a right coset of the point
    /// stabilizer, or None if y is not in the orbit of x.
    pub fn point_transporter(&self, x: usize, y: usize) -> Option<Coset> {
        // orbit of x with transversal
        let mut pos = vec![-1i32; self.degree];
        pos[x] = 0;
        let mut orbit = vec![x];
        let mut reps = vec![Perm::identity(self.degree)];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if pos[q] < 0 {
                    pos[q] = orbit.len() as i32;
                    reps.push(reps[pos[p] as usize].then(g));
                    orbit.push(q);
                }
            }
        }
        if pos[y] < 0 {
            return None;
        }
        let tau = reps[pos[y] as usize].clone();
        // Schreier generators of the stabilizer of x, reduced incrementally
        let mut stab = Chain::new(self.degree, &[]);
        for (i, &p) in orbit.iter().enumerate() {
            for g in &self.gens {
                let q = g.apply(p);
                let s = reps[i].then(g).then(&reps[pos[q] as usize].inverse());
                if !s.is_identity() && !stab.contains(&s) {
                    stab.insert(s);
                }
            }
        }
        let gens = chain_strong_gens(&stab);
        Some(Coset { group: PermGroup::new(self.degree, gens).unwrap(), rep: tau })
    }

    /// Pointwise stabilizer of a point set.
    pub fn pointwise_stabilizer(&self, delta: &[usize]) -> PermGroup {
        let mut chain = Chain::new(self.degree, delta);
        for g in &self.gens {
            chain.insert(g.clone());
        }
        let gens = chain.level_gens(delta.len());
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// A reduced generating set obtained from the stabilizer chain: every
    /// strong generator that actually grows the group, capped well below
    /// degree^2.
    pub fn reduced_generators(&self) -> Vec<Perm> {
        let mut chain = Chain::new(self.degree, &[]);
        let mut keep = Vec::new();
        for g in &self.gens {
            if !g.is_identity() && !chain.contains(g) {
                chain.insert(g.clone());
                keep.push(g.clone());
            }
        }
        keep
    }

    pub fn elements_capped(&self, cap: usize) -> Option<Vec<Perm>> {
        if self.gens.is_empty() {
            return Some(vec![Perm::identity(self.degree)]);
        }
        self.chain().elements_capped(cap)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        if self.gens.is_empty() {
            return Perm::identity(self.degree);
        }
        self.chain().random_element(rng)
    }
}

pub(crate) fn chain_strong_gens(chain: &Chain) -> Vec<Perm> {
    chain.level_gens(0)
}

/// A right coset `group * rep` inside some ambient symmetric group.
#[derive(Clone, Debug)]
pub struct Coset {
    pub group: PermGroup,
    pub rep: Perm,
}

impl Coset {
    pub fn from_group(group: PermGroup) -> Self {
        let rep = Perm::identity(group.degree());
        Coset { group, rep }
    }

    pub fn size(&self) -> u128 {
        self.group.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.group.contains(&g.then(&self.rep.inverse()))
    }

    pub fn same_coset(&self, other: &Coset) -> bool {
        self.size() == other.size() && self.contains(&other.rep)
    }

    /// All coset elements; None above the cap.
    pub fn elements_capped(&self, cap: usize) -> Option<Vec<Perm>> {
        self.group
            .elements_capped(cap)
            .map(|els| els.into_iter().map(|e| e.then(&self.rep)).collect())
    }
}

/// Union of cosets known (by the caller) to form a single coset: the first
/// representative serves, and the subgroup is generated by all subgroups
/// together with the representative differences.
pub fn union_of_cosets(cosets: &[Coset]) -> Option<Coset> {
    let first = cosets.first()?;
    let degree = first.group.degree();
    let rep = first.rep.clone();
    let rep_inv = rep.inverse();
    let mut gens: Vec<Perm> = Vec::new();
    for c in cosets {
        gens.extend_from_slice(c.group.generators());
        let diff = c.rep.then(&rep_inv);
        if !diff.is_identity() {
            gens.push(diff);
        }
    }
    let group = PermGroup::new(degree, gens).unwrap();
    let reduced = group.reduced_generators();
    Some(Coset { group: PermGroup::new(degree, reduced).unwrap(), rep })
}

/// A homomorphism from a permutation group on 0..m to Sym(0..q), given by
/// images of the generators.
pub struct TrackedHom {
    pub source: PermGroup,
    pub images: Vec<Perm>,
    pub codomain: usize,
}

/// Kernel, image, and preimage data for a [`TrackedHom`], realized on the
/// combined action on the disjoint union of domain and codomain.
pub struct HomData {
    pub kernel: PermGroup,
    pub image: PermGroup,
    graph: Chain,
    m: usize,
    q: usize,
}

impl TrackedHom {
    pub fn new(source: PermGroup, images: Vec<Perm>, codomain: usize) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Precondition("one image per generator required".into()));
        }
        for p in &images {
            if p.degree() != codomain {
                return Err(Error::DegreeMismatch(p.degree(), codomain));
            }
        }
        Ok(TrackedHom { source, images, codomain })
    }

    /// Builds kernel/image/preimage data. Fails with `NotHomomorphism` if
    /// the generator assignment does not extend to a homomorphism (detected
    /// as a graph-group order mismatch).
    pub fn kernel_and_image(&self) -> Result<HomData> {
        let m = self.source.degree();
        let q = self.codomain;
        let forced: Vec<usize> = (m..m + q).collect();
        let mut graph = Chain::new(m + q, &forced);
        for (g, h) in self.source.generators().iter().zip(&self.images) {
            let mut img: Vec<usize> = (0..m + q).collect();
            for x in 0..m {
                img[x] = g.apply(x);
            }
            for y in 0..q {
                img[m + y] = m + h.apply(y);
            }
            graph.insert(Perm::from_images(img).unwrap());
        }
        if graph.order() != self.source.order() {
            return Err(Error::NotHomomorphism(
                "generator images do not extend to a homomorphism".into(),
            ));
        }
        let kernel_gens: Vec<Perm> = graph
            .level_gens(q)
            .into_iter()
            .map(|g| g.restrict(m).expect("kernel fixes the codomain part"))
            .collect();
        let kernel = PermGroup::new(m, PermGroup::new(m, kernel_gens)?.reduced_generators())?;
        let image = if self.images.is_empty() {
            PermGroup::trivial(q)
        } else {
            PermGroup::new(q, self.images.clone())?
        };
        Ok(HomData { kernel, image, graph, m, q })
    }
}

impl HomData {
    /// Any preimage of an image element; errors if it is not in the image.
    pub fn preimage(&self, h: &Perm) -> Result<Perm> {
        if h.degree() != self.q {
            return Err(Error::DegreeMismatch(h.degree(), self.q));
        }
        let g = self.graph.element_with_base_images(self.q, |l| {
            // base point of forced level l is m + l
            self.m + h.apply(l)
        })?;
        // verify the codomain part matches exactly
        for y in 0..self.q {
            if g.apply(self.m + y) != self.m + h.apply(y) {
                return Err(Error::NotInImage);
            }
        }
        g.restrict(self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut img: Vec<usize> = (0..n).collect();
        for w in 0..pts.len() {
            img[pts[w]] = pts[(w + 1) % pts.len()];
        }
        Perm::from_images(img).unwrap()
    }

    /// brute-force closure of a generator set
    fn brute_elements(degree: usize, gens: &[Perm]) -> Vec<Perm> {
        let mut seen = std::collections::HashSet::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head].clone();
            head += 1;
            for g in gens {
                let f = e.then(g);
                if seen.insert(f.clone()) {
                    queue.push(f);
                }
            }
        }
        queue
    }

    #[test]
    fn sym5_order_from_two_generators() {
        let gens = vec![cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[0, 1])];
        let g = PermGroup::new(5, gens.clone()).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(brute_elements(5, &gens).len(), 120);
    }

    #[test]
    fn trivial_group_has_order_one() {
        let g = PermGroup::new(4, vec![Perm::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Perm::identity(4)));
        assert!(!g.contains(&cycle(4, &[0, 1])));
    }

    #[test]
    fn orbit_of_three_cycle() {
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1, 2])]).unwrap();
        assert_eq!(g.orbit(0), vec![0, 1, 2]);
        assert_eq!(g.orbit(3), vec![3]);
    }

    #[test]
    fn chain_order_matches_bruteforce_on_random_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let degree = rng.gen_range(3..8);
            let ngens = rng.gen_range(1..4);
            let mut gens = Vec::new();
            for _ in 0..ngens {
                let mut img: Vec<usize> = (0..degree).collect();
                for i in (1..degree).rev() {
                    let j = rng.gen_range(0..=i);
                    img.swap(i, j);
                }
                gens.push(Perm::from_images(img).unwrap());
            }
            let g = PermGroup::new(degree, gens.clone()).unwrap();
            assert_eq!(g.order() as usize, brute_elements(degree, &gens).len());
        }
    }

    #[test]
    fn transporter_in_sym3() {
        let g = PermGroup::symmetric(3);
        let c = g.point_transporter(0, 1).unwrap();
        assert_eq!(c.size(), 2);
        // oracle: enumerate all 6 permutations
        let expected: Vec<Perm> = brute_elements(3, g.generators())
            .into_iter()
            .filter(|p| p.apply(0) == 1)
            .collect();
        assert_eq!(expected.len(), 2);
        for e in &expected {
            assert!(c.contains(e));
        }
    }

    #[test]
    fn transporter_x_to_x_is_stabilizer_with_identity_rep() {
        let g = PermGroup::symmetric(4);
        let c = g.point_transporter(2, 2).unwrap();
        assert!(c.rep.is_identity());
        assert_eq!(c.size(), 6);
        for e in c.elements_capped(10).unwrap() {
            assert_eq!(e.apply(2), 2);
        }
    }

    #[test]
    fn transporter_empty_when_not_in_orbit() {
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1]).then(&cycle(4, &[2, 3]))]).unwrap();
        assert!(g.point_transporter(0, 2).is_none());
        assert!(g.point_transporter(0, 1).is_some());
    }

    #[test]
    fn transporter_exhaustive_check() {
        // every returned element maps x to y; sizes match enumeration
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let degree = rng.gen_range(4..7);
            let mut img: Vec<usize> = (0..degree).collect();
            for i in (1..degree).rev() {
                let j = rng.gen_range(0..=i);
                img.swap(i, j);
            }
            let gens = vec![Perm::from_images(img).unwrap(), cycle(degree, &[0, 1, 2])];
            let g = PermGroup::new(degree, gens.clone()).unwrap();
            let all = brute_elements(degree, &gens);
            for x in 0..degree {
                for y in 0..degree {
                    let expected: Vec<&Perm> =
                        all.iter().filter(|p| p.apply(x) == y).collect();
                    match g.point_transporter(x, y) {
                        None => assert!(expected.is_empty()),
                        Some(c) => {
                            assert_eq!(c.size() as usize, expected.len());
                            for e in &expected {
                                assert!(c.contains(e));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_and_preimages_block_action() {
        // P = <(0 2)(1 3), (0 1)> acting on blocks {0,1},{2,3}
        let g1 = cycle(4, &[0, 2]).then(&cycle(4, &[1, 3]));
        let g2 = cycle(4, &[0, 1]);
        let p = PermGroup::new(4, vec![g1.clone(), g2.clone()]).unwrap();
        assert_eq!(p.order(), 8);
        // block action: block of 0,1 is point 0; block of 2,3 is point 1
        let images = vec![cycle(2, &[0, 1]), Perm::identity(2)];
        let f = TrackedHom::new(p, images, 2).unwrap();
        let data = f.kernel_and_image().unwrap();
        assert_eq!(data.kernel.order(), 4);
        assert_eq!(data.image.order(), 2);
        // kernel is <(0 1),(2 3)>
        assert!(data.kernel.contains(&cycle(4, &[0, 1])));
        assert!(data.kernel.contains(&cycle(4, &[2, 3])));
        // preimage check
        let pre = data.preimage(&cycle(2, &[0, 1])).unwrap();
        // its block action must swap the blocks
        assert!(pre.apply(0) >= 2);
        let pre_id = data.preimage(&Perm::identity(2)).unwrap();
        assert!(pre_id.apply(0) < 2);
    }

    #[test]
    fn kernel_of_identity_hom_is_trivial() {
        let p = PermGroup::symmetric(4);
        let images = p.generators().to_vec();
        let f = TrackedHom::new(p.clone(), images, p.degree()).unwrap();
        let data = f.kernel_and_image().unwrap();
        assert_eq!(data.kernel.order(), 1);
        assert_eq!(data.image.order(), 24);
        for g in data.image.generators() {
            let pre = data.preimage(g).unwrap();
            assert_eq!(&pre, g);
        }
    }

    #[test]
    fn kernel_of_trivial_hom_is_whole_group() {
        let p = PermGroup::symmetric(3);
        let images = vec![Perm::identity(1); p.generators().len()];
        let f = TrackedHom::new(p, images, 1).unwrap();
        let data = f.kernel_and_image().unwrap();
        assert_eq!(data.kernel.order(), 6);
        assert_eq!(data.image.order(), 1);
    }

    #[test]
    fn order_is_product_of_kernel_and_image() {
        let g1 = cycle(6, &[0, 1, 2]);
        let g2 = cycle(6, &[3, 4]);
        let p = PermGroup::new(6, vec![g1.then(&g2)]).unwrap();
        // act on the last two points only
        let images: Vec<Perm> = p
            .generators()
            .iter()
            .map(|g| {
                Perm::from_images((0..2).map(|x| g.apply(x + 3) - 3).collect()).unwrap()
            })
            .collect();
        let f = TrackedHom::new(p.clone(), images, 2).unwrap();
        let data = f.kernel_and_image().unwrap();
        assert_eq!(p.order(), data.kernel.order() * data.image.order());
    }

    #[test]
    fn pointwise_stabilizer_fixes_points() {
        let g = PermGroup::symmetric(5);
        let s = g.pointwise_stabilizer(&[1, 3]);
        assert_eq!(s.order(), 6); // Sym on remaining 3 points
        for gen in s.generators() {
            assert_eq!(gen.apply(1), 1);
            assert_eq!(gen.apply(3), 3);
        }
    }

    #[test]
    fn union_of_single_and_equal_cosets() {
        let g = PermGroup::symmetric(3);
        let c = g.point_transporter(0, 1).unwrap();
        let u = union_of_cosets(&[c.clone()]).unwrap();
        assert!(u.same_coset(&c));
        let u2 = union_of_cosets(&[c.clone(), c.clone()]).unwrap();
        assert!(u2.same_coset(&c));
        assert!(union_of_cosets(&[]).is_none());
    }

    #[test]
    fn union_of_dp_style_cosets_matches_enumeration() {
        // inside Sym(3): union over b in {0,1} of {pi : 0->b, then 1->other}
        // arising as the transporter of the set {0,1} to {0,1}
        let g = PermGroup::symmetric(3);
        let all = brute_elements(3, g.generators());
        let expected: Vec<&Perm> = all
            .iter()
            .filter(|p| {
                let a = p.apply(0);
                let b = p.apply(1);
                (a == 0 || a == 1) && (b == 0 || b == 1)
            })
            .collect();
        // build the two pieces by hand the way the DP does
        let mut pieces = Vec::new();
        for target in [0usize, 1] {
            let other = 1 - target;
            if let Some(c0) = g.point_transporter(0, target) {
                // inside that coset, transport 1 -> other
                let y = c0.rep.inverse().apply(other);
                if let Some(c1) = c0.group.point_transporter(1, y) {
                    pieces.push(Coset {
                        group: c1.group,
                        rep: c1.rep.then(&c0.rep),
                    });
                }
            }
        }
        let u = union_of_cosets(&pieces).unwrap();
        assert_eq!(u.size() as usize, expected.len());
        for e in expected {
            assert!(u.contains(e));
        }
    }

    #[test]
    fn reduced_generators_preserve_order_and_cap() {
        let g = PermGroup::symmetric(5);
        let mut gens = g.generators().to_vec();
        // pad with redundant generators
        let all = brute_elements(5, &gens);
        gens.extend(all.iter().take(40).cloned());
        let padded = PermGroup::new(5, gens).unwrap();
        let reduced = padded.reduced_generators();
        assert!(reduced.len() <= 25); // degree^2 cap, comfortably
        let slim = PermGroup::new(5, reduced).unwrap();
        assert_eq!(slim.order(), 120);
    }

    #[test]
    fn elements_enumeration_matches_order() {
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3])]).unwrap();
        let els = g.elements_capped(100).unwrap();
        assert_eq!(els.len(), 4);
        let set: std::collections::HashSet<_> = els.into_iter().collect();
        assert_eq!(set.len(), 4);
    }
}
