//! Reductions between problems on a direct-factor-closed class of groups:
//! isomorphism, isomorphism maps and counts, automorphism counts and
//! orbits. Everything funnels through an automorphism-group provider and
//! the structure of Aut(G x H) for indecomposable nonabelian G, H: it is
//! generated by the block maps (aut/hom matrix) together with, exactly when
//! G and H are isomorphic, a factor-swapping automorphism. That dichotomy
//! yields both the counting identity with epsilon in {1, 2} and the
//! isomorphism extraction through any generator that moves G x Z(H).

use crate::abelian::AbelianBasis;
use crate::aut::{aut_agroup, AutConfig};
use crate::cayley::{
    centre, closure, derived_subgroup, direct_product, gcd, is_agroup, normal_closure, quotient, CayleyGroup, GroupHom, Subgroup,
};
use crate::error::{Error, Result};
use crate::oracle::oracle_automorphisms;
use crate::perm::PermGroup;
use std::rc::Rc;

/// Default order cap for brute-force direct factorization.
pub const FACTORIZATION_ORDER_CAP: usize = 512;
/// Cap on the number of normal subgroups enumerated during factorization.
pub const NORMAL_SUBGROUP_CAP: usize = 4096;

/// Supplies automorphism groups: the structured pipeline for A-groups, the
/// brute-force oracle otherwise.
#[derive(Clone, Default)]
pub struct AutProvider {
    pub cfg: AutConfig,
}

impl AutProvider {
    pub fn aut(&self, g: &CayleyGroup) -> Result<(PermGroup, u128)> {
        if is_agroup(g) {
            let r = aut_agroup(g, &self.cfg)?;
            let o = r.aut.order();
            Ok((r.aut, o))
        } else {
            let o = oracle_automorphisms(g, self.cfg.oracle_budget)?;
            Ok((o.group, o.count))
        }
    }

    pub fn acount(&self, g: &CayleyGroup) -> Result<u128> {
        self.aut(g).map(|(_, o)| o)
    }
}

/// |Hom(A, B)| for abelian B: homomorphisms factor through the
/// abelianization, and between cyclic groups there are gcd-many.
pub fn count_homs_to_abelian(a: &CayleyGroup, b: &CayleyGroup) -> Result<u128> {
    if !b.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let der = derived_subgroup(a, &Subgroup::whole(a));
    let (ab, _) = quotient(a, &der)?;
    let basis_a = AbelianBasis::new(Rc::new(ab))?;
    let basis_b = AbelianBasis::new(Rc::new(b.clone()))?;
    let mut count: u128 = 1;
    for &oa in &basis_a.orders {
        for &ob in &basis_b.orders {
            count *= gcd(oa as usize, ob as usize) as u128;
        }
    }
    Ok(count)
}

/// One directly indecomposable factor, with its embedding into the parent.
pub struct Factor {
    pub group: CayleyGroup,
    pub embed: Vec<u32>,
}

/// Brute-force direct factorization: abelian groups split along a cyclic
/// basis; otherwise complementary pairs of normal subgroups are searched
/// over the join-closure of single-element normal closures.
pub fn direct_factorization(g: &CayleyGroup) -> Result<Vec<Factor>> {
    direct_factorization_capped(g, FACTORIZATION_ORDER_CAP)
}

pub fn direct_factorization_capped(g: &CayleyGroup, order_cap: usize) -> Result<Vec<Factor>> {
    if g.order() > order_cap {
        return Err(Error::resource("direct factorization order cap", order_cap as u128));
    }
    if g.order() == 1 {
        return Ok(vec![Factor { group: g.clone(), embed: vec![0] }]);
    }
    if g.is_abelian() {
        let basis = AbelianBasis::new(Rc::new(g.clone()))?;
        let mut out = Vec::new();
        for (i, &gen) in basis.gens.iter().enumerate() {
            let order = basis.orders[i] as usize;
            let group = crate::cayley::cyclic_group(order);
            let embed: Vec<u32> =
                (0..order).map(|k| g.pow(gen, k as i64) as u32).collect();
            out.push(Factor { group, embed });
        }
        return Ok(out);
    }
    match split_one(g)? {
        None => Ok(vec![Factor {
            group: g.clone(),
            embed: (0..g.order() as u32).collect(),
        }]),
        Some((n1, n2)) => {
            let (g1, e1) = n1.as_group(g)?;
            let (g2, e2) = n2.as_group(g)?;
            let mut out = Vec::new();
            for (sub, embed) in [(g1, e1), (g2, e2)] {
                for f in direct_factorization_capped(&sub, order_cap)? {
                    let lifted: Vec<u32> =
                        f.embed.iter().map(|&x| embed[x as usize]).collect();
                    out.push(Factor { group: f.group, embed: lifted });
                }
            }
            Ok(out)
        }
    }
}

/// Finds one pair of complementary proper normal subgroups, if any.
fn split_one(g: &CayleyGroup) -> Result<Option<(Subgroup, Subgroup)>> {
    // normal subgroups as joins of single-element normal closures
    let mut seeds: Vec<Subgroup> = Vec::new();
    for class in g.conjugacy_classes() {
        if class[0] != 0 {
            seeds.push(normal_closure(g, &[class[0]]));
        }
    }
    let mut normals: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let mut keys: std::collections::BTreeSet<Vec<u32>> =
        std::collections::BTreeSet::new();
    keys.insert(vec![0]);
    let mut queue: Vec<Subgroup> = Vec::new();
    for s in &seeds {
        if keys.insert(s.elements.clone()) {
            normals.push(s.clone());
            queue.push(s.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for s in &seeds {
            if normals.len() > NORMAL_SUBGROUP_CAP {
                return Err(Error::resource(
                    "normal subgroup enumeration",
                    NORMAL_SUBGROUP_CAP as u128,
                ));
            }
            let mut gens: Vec<usize> = cur.gens.iter().map(|&x| x as usize).collect();
            gens.extend(s.gens.iter().map(|&x| x as usize));
            let join = closure(g, &gens)?;
            if keys.insert(join.elements.clone()) {
                normals.push(join.clone());
                queue.push(join);
            }
        }
    }
    normals.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    for n1 in &normals {
        if n1.order() == 1 || n1.order() == g.order() {
            continue;
        }
        for n2 in &normals {
            if n1.order() * n2.order() != g.order() {
                continue;
            }
            let meet = n1.iter().filter(|&x| n2.contains(x)).count();
            if meet == 1 {
                return Ok(Some((n1.clone(), n2.clone())));
            }
        }
    }
    Ok(None)
}

/// The block description of an automorphism of G x H for indecomposable
/// nonabelian factors: alpha in Aut(G), beta in Hom(H, Z(G)), gamma in
/// Hom(G, Z(H)), delta in Aut(H), acting by
/// (g, h) -> (alpha(g) beta(h), gamma(g) delta(h)).
pub struct BidwellMatrix {
    pub alpha: GroupHom,
    pub beta: GroupHom,
    pub gamma: GroupHom,
    pub delta: GroupHom,
}

impl BidwellMatrix {
    /// The induced map on product indices ((g,h) = g*|H| + h).
    pub fn apply(&self, g: &CayleyGroup, h: &CayleyGroup, x: usize) -> usize {
        let (gx, hx) = (x / h.order(), x % h.order());
        let left = g.mul(self.alpha.apply(gx), self.beta.apply(hx));
        let right = h.mul(self.gamma.apply(gx), self.delta.apply(hx));
        left * h.order() + right
    }

    /// Verifies the action is an automorphism of the product table.
    pub fn is_automorphism(&self, g: &CayleyGroup, h: &CayleyGroup, product: &CayleyGroup) -> bool {
        let n = product.order();
        let images: Vec<usize> = (0..n).map(|x| self.apply(g, h, x)).collect();
        let mut seen = vec![false; n];
        for &y in &images {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if images[product.mul(a, b)] != product.mul(images[a], images[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// True iff every generator of Aut(G x H) maps G x Z(H) onto itself;
/// equivalent to G and H being non-isomorphic (for indecomposable
/// nonabelian G, H).
pub fn invariance_check(g: &CayleyGroup, h: &CayleyGroup, aut_gh: &PermGroup) -> bool {
    let z = centre(h);
    let mut in_s = vec![false; g.order() * h.order()];
    for gx in 0..g.order() {
        for zx in z.iter() {
            in_s[gx * h.order() + zx] = true;
        }
    }
    aut_gh.generators().iter().all(|psi| {
        (0..in_s.len()).all(|x| !in_s[x] || in_s[psi.apply(x)])
    })
}

fn swap_moved_point(
    g: &CayleyGroup,
    h: &CayleyGroup,
    aut_gh: &PermGroup,
) -> Option<(usize, crate::perm::Perm)> {
    let z = centre(h);
    let mut in_s = vec![false; g.order() * h.order()];
    for gx in 0..g.order() {
        for zx in z.iter() {
            in_s[gx * h.order() + zx] = true;
        }
    }
    for psi in aut_gh.generators() {
        for x in 0..in_s.len() {
            if in_s[x] && !in_s[psi.apply(x)] {
                return Some((x, psi.clone()));
            }
        }
    }
    None
}

/// Isomorphism test between indecomposable nonabelian groups through the
/// counting identity |Aut(GxH)| = |Aut G| |Aut H| |Hom(G,Z(H))|
/// |Hom(H,Z(G))| epsilon.
fn indecomposable_nonabelian_iso(
    g: &CayleyGroup,
    h: &CayleyGroup,
    provider: &AutProvider,
) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.table() == h.table() {
        return Ok(true);
    }
    let (product, _, _) = direct_product(g, h);
    let aut_product = provider.acount(&product)?;
    let aut_g = provider.acount(g)?;
    let aut_h = provider.acount(h)?;
    let hom_gz = count_homs_to_abelian(g, &centre(h).as_group(h)?.0)?;
    let hom_hz = count_homs_to_abelian(h, &centre(g).as_group(g)?.0)?;
    let block = aut_g * aut_h * hom_gz * hom_hz;
    if aut_product == block {
        Ok(false)
    } else if aut_product == 2 * block {
        Ok(true)
    } else {
        Err(Error::Inconsistency(format!(
            "product automorphism count {aut_product} is not epsilon * {block}"
        )))
    }
}

/// Matches factor lists up to isomorphism (Krull-Schmidt); returns the
/// matching h-index per g-factor, or None if the multisets differ.
fn match_factors(
    fg: &[Factor],
    fh: &[Factor],
    provider: &AutProvider,
) -> Result<Option<Vec<usize>>> {
    if fg.len() != fh.len() {
        return Ok(None);
    }
    let mut used = vec![false; fh.len()];
    let mut matching = Vec::with_capacity(fg.len());
    for a in fg {
        let mut found = None;
        for (j, b) in fh.iter().enumerate() {
            if used[j] || a.group.order() != b.group.order() {
                continue;
            }
            let iso = match (a.group.is_abelian(), b.group.is_abelian()) {
                (true, true) => true, // cyclic of equal prime-power order
                (false, false) => indecomposable_nonabelian_iso(&a.group, &b.group, provider)?,
                _ => false,
            };
            if iso {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => {
                used[j] = true;
                matching.push(j);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(matching))
}

/// Group isomorphism through the automorphism-count reduction.
pub fn grp_iso(g: &CayleyGroup, h: &CayleyGroup, provider: &AutProvider) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(false);
    }
    if g.is_abelian() {
        let bg = AbelianBasis::new(Rc::new(g.clone()))?;
        let bh = AbelianBasis::new(Rc::new(h.clone()))?;
        return Ok(bg.orders == bh.orders);
    }
    let fg = direct_factorization(g)?;
    let fh = direct_factorization(h)?;
    Ok(match_factors(&fg, &fh, provider)?.is_some())
}

/// Number of isomorphisms G -> H: |Aut(G)| when isomorphic, else 0.
pub fn grp_icount(g: &CayleyGroup, h: &CayleyGroup, provider: &AutProvider) -> Result<u128> {
    if grp_iso(g, h, provider)? {
        provider.acount(g)
    } else {
        Ok(0)
    }
}

pub fn grp_acount(g: &CayleyGroup, provider: &AutProvider) -> Result<u128> {
    provider.acount(g)
}

/// The partition of G into Aut(G)-orbits, ordered by minimal element.
pub fn grp_apart(g: &CayleyGroup, provider: &AutProvider) -> Result<Vec<Vec<usize>>> {
    let (aut, _) = provider.aut(g)?;
    Ok(aut.orbits())
}

/// An explicit isomorphism G -> H, or None. Indecomposable nonabelian pairs
/// go through a factor-swapping generator of Aut(G x H); abelian pairs map
/// along matched bases; composite groups match factors and assemble.
pub fn grp_imap(
    g: &CayleyGroup,
    h: &CayleyGroup,
    provider: &AutProvider,
) -> Result<Option<GroupHom>> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    if g.is_abelian() {
        let bg = AbelianBasis::new(Rc::new(g.clone()))?;
        let bh = AbelianBasis::new(Rc::new(h.clone()))?;
        if bg.orders != bh.orders {
            return Ok(None);
        }
        let images: Vec<u32> = (0..g.order())
            .map(|x| bh.elem_of(bg.coords_of(x)) as u32)
            .collect();
        let hom = GroupHom { src_order: g.order(), dst_order: h.order(), images };
        hom.validate(g, h)?;
        return Ok(Some(hom));
    }
    let fg = direct_factorization(g)?;
    let fh = direct_factorization(h)?;
    let Some(matching) = match_factors(&fg, &fh, provider)? else {
        return Ok(None);
    };
    // per-factor isomorphisms
    let mut factor_isos: Vec<Vec<u32>> = Vec::with_capacity(fg.len());
    for (i, a) in fg.iter().enumerate() {
        let b = &fh[matching[i]];
        let iso = factor_imap(&a.group, &b.group, provider)?.ok_or_else(|| {
            Error::Inconsistency("matched factors must admit an isomorphism".into())
        })?;
        factor_isos.push(iso.images);
    }
    // decompose each element of G over its internal factors
    let n = g.order();
    let k = fg.len();
    let mut tuple_of = vec![u32::MAX; n];
    let sizes: Vec<usize> = fg.iter().map(|f| f.group.order()).collect();
    let total: usize = sizes.iter().product();
    if total != n {
        return Err(Error::Inconsistency("factor orders do not multiply to |G|".into()));
    }
    for rank in 0..total {
        let mut rest = rank;
        let mut prod = 0usize;
        for (i, f) in fg.iter().enumerate() {
            let xi = rest % sizes[i];
            rest /= sizes[i];
            prod = g.mul(prod, f.embed[xi] as usize);
        }
        if tuple_of[prod] != u32::MAX {
            return Err(Error::Inconsistency("internal factor product is not bijective".into()));
        }
        tuple_of[prod] = rank as u32;
    }
    let images: Vec<u32> = (0..n)
        .map(|x| {
            let mut rest = tuple_of[x] as usize;
            let mut img = 0usize;
            for i in 0..k {
                let xi = rest % sizes[i];
                rest /= sizes[i];
                let yi = factor_isos[i][xi] as usize;
                img = h.mul(img, fh[matching[i]].embed[yi] as usize);
            }
            img as u32
        })
        .collect();
    let hom = GroupHom { src_order: n, dst_order: n, images };
    hom.validate(g, h)?;
    if !hom.is_bijective() {
        return Err(Error::Inconsistency("assembled isomorphism is not bijective".into()));
    }
    Ok(Some(hom))
}

/// Isomorphism between indecomposable factors.
fn factor_imap(
    g: &CayleyGroup,
    h: &CayleyGroup,
    provider: &AutProvider,
) -> Result<Option<GroupHom>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.is_abelian() && h.is_abelian() {
        // cyclic of prime-power order: generator to generator
        let gen_g = (0..g.order()).find(|&x| g.order_of(x) == g.order());
        let gen_h = (0..h.order()).find(|&x| h.order_of(x) == h.order());
        let (Some(gen_g), Some(gen_h)) = (gen_g, gen_h) else {
            return Ok(None);
        };
        let mut images = vec![0u32; g.order()];
        let mut x = 0usize;
        let mut y = 0usize;
        loop {
            images[x] = y as u32;
            x = g.mul(x, gen_g);
            y = h.mul(y, gen_h);
            if x == 0 {
                break;
            }
        }
        let hom = GroupHom { src_order: g.order(), dst_order: h.order(), images };
        hom.validate(g, h)?;
        return Ok(Some(hom));
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    // nonabelian indecomposable: extract from a swapping generator
    let (product, _, _) = direct_product(g, h);
    let (aut_gh, _) = provider.aut(&product)?;
    let Some((_, psi)) = swap_moved_point(g, h, &aut_gh) else {
        return Ok(None);
    };
    let nh = h.order();
    let images: Vec<u32> = (0..g.order())
        .map(|gx| (psi.apply(gx * nh) % nh) as u32)
        .collect();
    let hom = GroupHom { src_order: g.order(), dst_order: h.order(), images };
    hom.validate(g, h).map_err(|_| {
        Error::Inconsistency("extracted map is not a homomorphism".into())
    })?;
    if !hom.is_bijective() {
        return Err(Error::Inconsistency("extracted map is not bijective".into()));
    }
    Ok(Some(hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{abelian_group, alt_group, cyclic_group, sym_group};
    use crate::perm::Perm;

    fn c7_c3() -> CayleyGroup {
        let a = cyclic_group(7);
        let h = cyclic_group(3);
        let m2 = Perm::from_images((0..7).map(|x| x * 2 % 7).collect()).unwrap();
        let action = vec![Perm::identity(7), m2.clone(), m2.then(&m2)];
        crate::cayley::semidirect_product(&a, &h, &action).unwrap().0
    }

    #[test]
    fn hom_counts() {
        assert_eq!(count_homs_to_abelian(&cyclic_group(4), &cyclic_group(2)).unwrap(), 2);
        assert_eq!(count_homs_to_abelian(&sym_group(3), &cyclic_group(6)).unwrap(), 2);
        assert_eq!(count_homs_to_abelian(&alt_group(4), &cyclic_group(2)).unwrap(), 1);
    }

    #[test]
    fn factorization_of_c6() {
        let g = cyclic_group(6);
        let f = direct_factorization(&g).unwrap();
        let mut orders: Vec<usize> = f.iter().map(|x| x.group.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn factorization_of_sym3_alt4() {
        let (g, _, _) = direct_product(&sym_group(3), &alt_group(4));
        let f = direct_factorization(&g).unwrap();
        let mut orders: Vec<usize> = f.iter().map(|x| x.group.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![6, 12]);
        // embeddings carry subgroup structure
        for fac in &f {
            for a in 0..fac.group.order() {
                for b in 0..fac.group.order() {
                    let lhs = g.mul(fac.embed[a] as usize, fac.embed[b] as usize);
                    assert_eq!(lhs, fac.embed[fac.group.mul(a, b)] as usize);
                }
            }
        }
    }

    #[test]
    fn alt5_is_indecomposable() {
        let f = direct_factorization(&alt_group(5)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].group.order(), 60);
    }

    #[test]
    fn counting_identity_for_sym3_pair() {
        let provider = AutProvider::default();
        let s3 = sym_group(3);
        let (product, _, _) = direct_product(&s3, &s3);
        assert_eq!(provider.acount(&product).unwrap(), 72);
        // 72 = 6 * 6 * 1 * 1 * 2
        assert!(indecomposable_nonabelian_iso(&s3, &s3, &provider).unwrap());
        assert_eq!(grp_icount(&s3, &s3, &provider).unwrap(), 6);
    }

    #[test]
    fn invariance_for_nonisomorphic_pair() {
        let provider = AutProvider::default();
        let s3 = sym_group(3);
        let a4 = alt_group(4);
        let (product, _, _) = direct_product(&s3, &a4);
        let (aut, _) = provider.aut(&product).unwrap();
        assert!(invariance_check(&s3, &a4, &aut));
    }

    #[test]
    fn invariance_fails_for_isomorphic_pair() {
        let provider = AutProvider::default();
        let s3 = sym_group(3);
        let (product, _, _) = direct_product(&s3, &s3);
        let (aut, _) = provider.aut(&product).unwrap();
        assert!(!invariance_check(&s3, &s3, &aut));
    }

    #[test]
    fn c21_is_not_the_frobenius_group() {
        let provider = AutProvider::default();
        assert!(!grp_iso(&cyclic_group(21), &c7_c3(), &provider).unwrap());
        assert!(grp_iso(&cyclic_group(21), &cyclic_group(21), &provider).unwrap());
    }

    #[test]
    fn imap_on_identical_tables() {
        let provider = AutProvider::default();
        for g in [sym_group(3), alt_group(4), c7_c3()] {
            let hom = grp_imap(&g, &g, &provider).unwrap().unwrap();
            hom.validate(&g, &g).unwrap();
            assert!(hom.is_bijective());
        }
    }

    #[test]
    fn imap_on_relabeled_product() {
        let provider = AutProvider::default();
        let (g, _, _) = direct_product(&sym_group(3), &cyclic_group(5));
        let sigma = {
            let mut img: Vec<usize> = (0..30).collect();
            img.swap(3, 17);
            img.swap(5, 22);
            img.swap(9, 11);
            Perm::from_images(img).unwrap()
        };
        let h = g.relabeled(&sigma).unwrap();
        let hom = grp_imap(&g, &h, &provider).unwrap().unwrap();
        hom.validate(&g, &h).unwrap();
        assert!(hom.is_bijective());
    }

    #[test]
    fn imap_absent_for_nonisomorphic() {
        let provider = AutProvider::default();
        assert!(grp_imap(&cyclic_group(21), &c7_c3(), &provider).unwrap().is_none());
        assert!(grp_imap(&abelian_group(&[2, 4]), &cyclic_group(8), &provider)
            .unwrap()
            .is_none());
    }

    #[test]
    fn apart_is_order_compatible() {
        let provider = AutProvider::default();
        let g = alt_group(4);
        let parts = grp_apart(&g, &provider).unwrap();
        // refining by element order changes nothing
        for part in &parts {
            let orders: std::collections::BTreeSet<usize> =
                part.iter().map(|&x| g.order_of(x)).collect();
            assert_eq!(orders.len(), 1);
        }
        let total: usize = parts.iter().map(|p| p.len()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn bidwell_matrix_action_is_an_automorphism() {
        let s3 = sym_group(3);
        let a4 = alt_group(4);
        let (product, _, _) = direct_product(&s3, &a4);
        // alpha, delta identities; beta, gamma trivial (centres are trivial)
        let m = BidwellMatrix {
            alpha: GroupHom::identity(&s3),
            beta: GroupHom { src_order: 12, dst_order: 6, images: vec![0; 12] },
            gamma: GroupHom { src_order: 6, dst_order: 12, images: vec![0; 6] },
            delta: GroupHom::identity(&a4),
        };
        assert!(m.is_automorphism(&s3, &a4, &product));
        // a nontrivial alpha: conjugation by a transposition
        let conj: Vec<u32> = (0..6).map(|x| s3.conj(x, 1) as u32).collect();
        let m2 = BidwellMatrix {
            alpha: GroupHom { src_order: 6, dst_order: 6, images: conj },
            beta: GroupHom { src_order: 12, dst_order: 6, images: vec![0; 12] },
            gamma: GroupHom { src_order: 6, dst_order: 12, images: vec![0; 6] },
            delta: GroupHom::identity(&a4),
        };
        assert!(m2.is_automorphism(&s3, &a4, &product));
    }

    #[test]
    fn bidwell_block_count_with_nontrivial_centre() {
        // G = H = C3 x| C4 (dicyclic-like with centre C2): check the block
        // formula |Aut(GxH)| = |Aut G||Aut H||Hom(G,Z)||Hom(H,Z)| * 2
        let provider = AutProvider::default();
        let c3 = cyclic_group(3);
        let c4 = cyclic_group(4);
        let inv3 = Perm::from_images(vec![0, 2, 1]).unwrap();
        let (q12, _, _) = crate::cayley::semidirect_product(
            &c3,
            &c4,
            &[Perm::identity(3), inv3.clone(), Perm::identity(3), inv3],
        )
        .unwrap();
        let z = centre(&q12);
        assert_eq!(z.order(), 2);
        let (product, _, _) = direct_product(&q12, &q12);
        let total = provider.acount(&product).unwrap();
        let aut_one = provider.acount(&q12).unwrap();
        let homs = count_homs_to_abelian(&q12, &z.as_group(&q12).unwrap().0).unwrap();
        assert_eq!(total, aut_one * aut_one * homs * homs * 2);
    }

    #[test]
    fn iso_of_relabelings_across_corpus() {
        let provider = AutProvider::default();
        let g = alt_group(4);
        let sigma = Perm::from_images(vec![0, 5, 7, 3, 9, 1, 6, 2, 8, 4, 11, 10]).unwrap();
        let h = g.relabeled(&sigma).unwrap();
        assert!(grp_iso(&g, &h, &provider).unwrap());
        let hom = grp_imap(&g, &h, &provider).unwrap().unwrap();
        hom.validate(&g, &h).unwrap();
    }
}
