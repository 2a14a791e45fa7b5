use agroup_core::cayley::{alt_group, direct_product};
use agroup_core::oracle::oracle_isomorphism;
use agroup_core::perm::Perm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let a4 = alt_group(4);
    let (a44, _, _) = direct_product(&a4, &a4);
    let (g, _, _) = direct_product(&a44, &a4);
    println!("order {}", g.order());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut img: Vec<usize> = (0..g.order()).collect();
    for i in (2..g.order()).rev() {
        let j = rng.gen_range(1..=i);
        img.swap(i, j);
    }
    let sigma = Perm::from_images(img).unwrap();
    let h = g.relabeled(&sigma).unwrap();
    let t0 = Instant::now();
    match oracle_isomorphism(&g, &h, 100_000_000) {
        Err(e) => println!("exhausted: {e} in {:?}", t0.elapsed()),
        Ok(Some(_)) => println!("FOUND in {:?}", t0.elapsed()),
        Ok(None) => println!("none (?!) in {:?}", t0.elapsed()),
    }
}
