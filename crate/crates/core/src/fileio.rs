//! The on-disk group table format.
//!
//! ```text
//! # name <string>        (optional)
//! order <n>
//! <n rows of n whitespace-separated 0-based element indices>
//! ```
//!
//! The writer emits exactly this shape. The reader tolerates blank lines
//! and `#` comments anywhere, and re-indexes the table if the identity is
//! not element 0.

use crate::cayley::CayleyGroup;
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::io::{BufRead, Write};
use std::path::Path;

pub fn write_group<W: Write>(g: &CayleyGroup, mut w: W) -> Result<()> {
    if let Some(name) = &g.name {
        writeln!(w, "# name {name}")?;
    }
    let n = g.order();
    writeln!(w, "order {n}")?;
    let mut line = String::new();
    for r in 0..n {
        line.clear();
        for c in 0..n {
            if c > 0 {
                line.push(' ');
            }
            line.push_str(itoa(g.mul(r, c)).as_str());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn itoa(x: usize) -> String {
    x.to_string()
}

pub fn write_group_file(g: &CayleyGroup, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_group(g, std::io::BufWriter::new(f))
}

pub fn read_group<R: BufRead>(r: R) -> Result<CayleyGroup> {
    read_group_capped(r, usize::MAX)
}

pub fn read_group_capped<R: BufRead>(r: R, max_order: usize) -> Result<CayleyGroup> {
    let mut name: Option<String> = None;
    let mut order: Option<usize> = None;
    let mut entries: Vec<u32> = Vec::new();
    for line in r.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(n) = rest.strip_prefix("name ") {
                name = Some(n.trim().to_string());
            }
            continue;
        }
        if order.is_none() {
            let rest = trimmed
                .strip_prefix("order")
                .ok_or_else(|| Error::Parse("expected `order <n>` header".into()))?;
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse("bad order value".into()))?;
            if n == 0 {
                return Err(Error::Parse("order must be positive".into()));
            }
            if n > max_order {
                return Err(Error::resource("group file order cap", max_order as u128));
            }
            order = Some(n);
            continue;
        }
        for tok in trimmed.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad table entry {tok:?}")))?;
            entries.push(v);
        }
    }
    let n = order.ok_or_else(|| Error::Parse("missing `order <n>` header".into()))?;
    if entries.len() != n * n {
        return Err(Error::Parse(format!(
            "expected {} table entries, found {}",
            n * n,
            entries.len()
        )));
    }
    // locate the identity and re-index it to 0 if necessary
    let identity = (0..n).find(|&e| {
        (0..n).all(|x| entries[e * n + x] == x as u32 && entries[x * n + e] == x as u32)
    });
    let identity = identity.ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
    if identity != 0 {
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(0, identity);
        let sigma = Perm::from_images(img)?;
        let mut relabeled = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                relabeled[sigma.apply(a) * n + sigma.apply(b)] =
                    sigma.apply(entries[a * n + b] as usize) as u32;
            }
        }
        entries = relabeled;
    }
    CayleyGroup::from_table(n, entries, name)
}

pub fn read_group_file(path: &Path) -> Result<CayleyGroup> {
    read_group_file_capped(path, usize::MAX)
}

pub fn read_group_file_capped(path: &Path, max_order: usize) -> Result<CayleyGroup> {
    let f = std::fs::File::open(path)?;
    read_group_capped(std::io::BufReader::new(f), max_order)
}

/// Serialize a permutation as a one-line image array.
pub fn perm_line(p: &Perm) -> String {
    p.images()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
