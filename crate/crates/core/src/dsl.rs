//! The group construction expression language used by the test corpus and
//! the command line:
//!
//! ```text
//! expr := cyclic(n) | elab(p, k) | abelian(n1, n2, ...)
//!       | sym(n) | alt(n)                      (n <= 6)
//!       | direct(expr, expr)
//!       | semidirect(exprA, exprH, action)
//!       | table(path)
//! action := pow(k) | mat([[..], ..]; [[..], ..]; ...)
//! ```
//!
//! `pow(k)` sends every generator of H to multiplication by k on A;
//! `mat` gives one matrix per generator of H over the cyclic basis of A
//! (basis generators ordered by prime, then prime-power order). Actions are
//! validated as homomorphisms into Aut(A) before any table is built.

use crate::abelian::AbelianBasis;
use crate::cayley::{
    abelian_group, alt_group, cyclic_group, direct_product, semidirect_product, sym_group,
    CayleyGroup, GroupHom,
};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::rc::Rc;

pub struct Built {
    pub group: CayleyGroup,
    /// embeddings of the two parts, for direct and semidirect products
    pub embeddings: Option<(GroupHom, GroupHom)>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Path(String),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push(Token::LParen);
                i += 1;
                // a table(...) argument is a raw path up to the closing paren
                if let Some(Token::Ident(name)) = out.len().checked_sub(2).map(|j| &out[j]) {
                    if name == "table" {
                        let start = i;
                        while i < chars.len() && chars[i] != ')' {
                            i += 1;
                        }
                        if i == chars.len() {
                            return Err(Error::Parse("unterminated table path".into()));
                        }
                        let path: String = chars[start..i].iter().collect();
                        out.push(Token::Path(path.trim().to_string()));
                    }
                }
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            ';' => {
                out.push(Token::Semi);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().map_err(|_| {
                    Error::Parse(format!("bad integer {s}"))
                })?));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        let got = self.next()?;
        if got != t {
            return Err(Error::Parse(format!("expected {t:?}, found {got:?}")));
        }
        Ok(())
    }

    fn int(&mut self) -> Result<u64> {
        match self.next()? {
            Token::Int(n) => Ok(n),
            t => Err(Error::Parse(format!("expected integer, found {t:?}"))),
        }
    }

    fn int_list(&mut self) -> Result<Vec<u64>> {
        let mut out = vec![self.int()?];
        while self.peek() == Some(&Token::Comma) {
            self.pos += 1;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<u64>>> {
        self.expect(Token::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Token::LBracket)?;
            rows.push(self.int_list()?);
            self.expect(Token::RBracket)?;
            match self.peek() {
                Some(Token::Comma) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.expect(Token::RBracket)?;
        Ok(rows)
    }

    fn expr(&mut self) -> Result<Built> {
        let name = match self.next()? {
            Token::Ident(s) => s,
            t => return Err(Error::Parse(format!("expected constructor, found {t:?}"))),
        };
        self.expect(Token::LParen)?;
        let built = match name.as_str() {
            "cyclic" => {
                let n = self.int()? as usize;
                if n == 0 {
                    return Err(Error::Parse("cyclic(0) is not a group".into()));
                }
                Built { group: cyclic_group(n), embeddings: None }
            }
            "elab" => {
                let p = self.int()? as u32;
                self.expect(Token::Comma)?;
                let k = self.int()? as usize;
                if !crate::cayley::is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                let orders = vec![p as usize; k.max(0)];
                let group = if k == 0 { cyclic_group(1) } else { abelian_group(&orders) };
                Built { group, embeddings: None }
            }
            "abelian" => {
                let orders: Vec<usize> = self.int_list()?.iter().map(|&n| n as usize).collect();
                if orders.iter().any(|&n| n == 0) {
                    return Err(Error::Parse("abelian factor of order 0".into()));
                }
                Built { group: abelian_group(&orders), embeddings: None }
            }
            "sym" => {
                let n = self.int()? as usize;
                if !(1..=6).contains(&n) {
                    return Err(Error::Parse("sym(n) supports 1 <= n <= 6".into()));
                }
                Built { group: sym_group(n), embeddings: None }
            }
            "alt" => {
                let n = self.int()? as usize;
                if !(1..=6).contains(&n) {
                    return Err(Error::Parse("alt(n) supports 1 <= n <= 6".into()));
                }
                Built { group: alt_group(n), embeddings: None }
            }
            "direct" => {
                let a = self.expr()?;
                self.expect(Token::Comma)?;
                let b = self.expr()?;
                let (group, ea, eb) = direct_product(&a.group, &b.group);
                Built { group, embeddings: Some((ea, eb)) }
            }
            "semidirect" => {
                let a = self.expr()?;
                self.expect(Token::Comma)?;
                let h = self.expr()?;
                self.expect(Token::Comma)?;
                let built = self.semidirect(a.group, h.group)?;
                built
            }
            "table" => {
                let path = match self.next()? {
                    Token::Path(p) => p,
                    t => return Err(Error::Parse(format!("expected path, found {t:?}"))),
                };
                let group = crate::fileio::read_group_file(std::path::Path::new(&path))?;
                Built { group, embeddings: None }
            }
            other => return Err(Error::Parse(format!("unknown constructor {other}"))),
        };
        self.expect(Token::RParen)?;
        Ok(built)
    }

    fn semidirect(&mut self, a: CayleyGroup, h: CayleyGroup) -> Result<Built> {
        let basis = AbelianBasis::new(Rc::new(a.clone()))?;
        let hgens = h.generating_set();
        let gen_perms: Vec<Perm> = match self.next()? {
            Token::Ident(kw) if kw == "pow" => {
                self.expect(Token::LParen)?;
                let k = self.int()?;
                self.expect(Token::RParen)?;
                let img: Vec<usize> = (0..a.order())
                    .map(|e| {
                        let coords: Vec<u32> = basis
                            .coords_of(e)
                            .iter()
                            .zip(&basis.orders)
                            .map(|(&c, &o)| ((c as u64 * k) % o as u64) as u32)
                            .collect();
                        basis.elem_of(&coords)
                    })
                    .collect();
                let perm = Perm::from_images(img).map_err(|_| {
                    Error::Parse(format!("pow({k}) is not invertible on this group"))
                })?;
                vec![perm; hgens.len()]
            }
            Token::Ident(kw) if kw == "mat" => {
                self.expect(Token::LParen)?;
                let mut mats = vec![self.matrix()?];
                while self.peek() == Some(&Token::Semi) {
                    self.pos += 1;
                    mats.push(self.matrix()?);
                }
                self.expect(Token::RParen)?;
                if mats.len() != hgens.len() {
                    return Err(Error::Parse(format!(
                        "need {} matrices (one per generator of H), got {}",
                        hgens.len(),
                        mats.len()
                    )));
                }
                let t = basis.rank();
                let mut perms = Vec::new();
                for m in mats {
                    if m.len() != t || m.iter().any(|r| r.len() != t) {
                        return Err(Error::Parse(format!("matrices must be {t} x {t}")));
                    }
                    let mut em = crate::abelian::EndoMatrix::zero(t);
                    for r in 0..t {
                        for c in 0..t {
                            em.set(r, c, (m[r][c] % basis.orders[c] as u64) as u32);
                        }
                    }
                    if !em.is_legal(&basis) {
                        return Err(Error::Parse(
                            "matrix violates the homomorphism divisibility constraints".into(),
                        ));
                    }
                    if !em.is_automorphism(&basis) {
                        return Err(Error::Parse("matrix is not invertible".into()));
                    }
                    perms.push(em.to_perm(&basis)?);
                }
                perms
            }
            t => return Err(Error::Parse(format!("expected pow or mat, found {t:?}"))),
        };
        // extend generator images to all of H, verifying the homomorphism
        let mut images: Vec<Option<Perm>> = vec![None; h.order()];
        images[0] = Some(Perm::identity(a.order()));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (i, &g) in hgens.iter().enumerate() {
                let xg = h.mul(x, g);
                let img = images[x].as_ref().unwrap().then(&gen_perms[i]);
                match &images[xg] {
                    None => {
                        images[xg] = Some(img);
                        queue.push(xg);
                    }
                    Some(existing) => {
                        if *existing != img {
                            return Err(Error::NotHomomorphism(
                                "action does not extend to a homomorphism on H".into(),
                            ));
                        }
                    }
                }
            }
        }
        let action: Option<Vec<Perm>> = images.into_iter().collect();
        let action = action.ok_or_else(|| {
            Error::Inconsistency("generating set did not reach all of H".into())
        })?;
        let (group, ea, eh) = semidirect_product(&a, &h, &action)?;
        Ok(Built { group, embeddings: Some((ea, eh)) })
    }
}

/// Builds a group from a DSL expression.
pub fn build_group(expr: &str) -> Result<Built> {
    let tokens = tokenize(expr)?;
    let mut parser = Parser { tokens, pos: 0 };
    let built = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse("trailing input after expression".into()));
    }
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{centre, is_agroup};

    #[test]
    fn sym3_times_alt4_is_an_agroup_of_order_72() {
        let b = build_group("direct(sym(3), alt(4))").unwrap();
        assert_eq!(b.group.order(), 72);
        assert!(is_agroup(&b.group));
        assert!(b.embeddings.is_some());
    }

    #[test]
    fn alt5_is_a_nonsolvable_agroup() {
        let b = build_group("alt(5)").unwrap();
        assert_eq!(b.group.order(), 60);
        assert!(is_agroup(&b.group));
        assert!(!crate::cayley::is_solvable(
            &b.group,
            &crate::cayley::Subgroup::whole(&b.group)
        ));
    }

    #[test]
    fn frobenius_21_from_the_dsl() {
        let b = build_group("semidirect(cyclic(7), cyclic(3), pow(2))").unwrap();
        assert_eq!(b.group.order(), 21);
        assert!(!b.group.is_abelian());
        assert_eq!(centre(&b.group).order(), 1);
    }

    #[test]
    fn pow_action_must_be_invertible_and_consistent() {
        // pow(7) on cyclic(7) is the zero map
        assert!(build_group("semidirect(cyclic(7), cyclic(3), pow(7))").is_err());
        // pow(3) on cyclic(7) has order 6, not dividing 3
        assert!(build_group("semidirect(cyclic(7), cyclic(3), pow(3))").is_err());
    }

    #[test]
    fn mat_action_builds_alt4() {
        let b = build_group("semidirect(elab(2,2), cyclic(3), mat([[0,1],[1,1]]))").unwrap();
        assert_eq!(b.group.order(), 12);
        let a4 = alt_group(4);
        assert!(crate::oracle::oracle_isomorphism(&b.group, &a4, 1_000_000)
            .unwrap()
            .is_some());
    }

    #[test]
    fn mat_rejects_singular_matrices() {
        assert!(build_group("semidirect(elab(2,2), cyclic(3), mat([[1,1],[1,1]]))").is_err());
    }

    #[test]
    fn abelian_and_elab_forms() {
        let b = build_group("abelian(2, 4, 3)").unwrap();
        assert_eq!(b.group.order(), 24);
        assert!(b.group.is_abelian());
        let e = build_group("elab(3, 3)").unwrap();
        assert_eq!(e.group.order(), 27);
        assert_eq!(e.group.exponent(), 3);
    }

    #[test]
    fn nested_expressions_parse() {
        let b = build_group("direct(semidirect(cyclic(7), cyclic(3), pow(2)), cyclic(2))")
            .unwrap();
        assert_eq!(b.group.order(), 42);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(build_group("cyclic(").is_err());
        assert!(build_group("unknown(3)").is_err());
        assert!(build_group("cyclic(3) trailing").is_err());
        assert!(build_group("sym(9)").is_err());
    }

    #[test]
    fn dsl_is_deterministic() {
        let a = build_group("semidirect(elab(2,2), cyclic(3), mat([[0,1],[1,1]]))").unwrap();
        let b = build_group("semidirect(elab(2,2), cyclic(3), mat([[0,1],[1,1]]))").unwrap();
        assert_eq!(a.group.table(), b.group.table());
    }
}
