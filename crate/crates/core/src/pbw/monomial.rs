use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Shape of the PBW basis: `ν` positive roots and rank `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub nu: usize,
    pub l: usize,
}

impl Layout {
    pub fn len(&self) -> usize {
        2 * self.nu + self.l
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn f_slot(&self, k: usize) -> usize {
        k
    }

    pub fn h_slot(&self, i: usize) -> usize {
        self.nu + i
    }

    pub fn e_slot(&self, k: usize) -> usize {
        self.nu + self.l + k
    }
}

/// One basis element `Π e_{−β_k}^(f_k) · Π (h_i choose n_i) · Π e_{β_k}^(e_k)`
/// of the ℤ-form.
///
/// Exponents are stored as `[f_1..f_ν, n_1..n_l, e_1..e_ν]`, indexed by the
/// position of `β_k` in the convex order. The negative part is multiplied in
/// the order `e_{−β_ν} ⋯ e_{−β_1}`, the positive part in the order
/// `e_{β_1} ⋯ e_{β_ν}`. The derived ordering is lexicographic on that vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Box<[u16]>);

/// A single factor of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `e_{−β_k}^(n)` for position `k`.
    F(u16, u16),
    /// `(h_i choose n)`.
    H(u16, u16),
    /// `e_{β_k}^(n)` for position `k`.
    E(u16, u16),
}

impl Monomial {
    pub fn one(layout: Layout) -> Monomial {
        Monomial(vec![0; layout.len()].into_boxed_slice())
    }

    pub fn from_letter(layout: Layout, x: Letter) -> Monomial {
        let mut m = Monomial::one(layout);
        match x {
            Letter::F(k, n) => m.0[layout.f_slot(k as usize)] = n,
            Letter::H(i, n) => m.0[layout.h_slot(i as usize)] = n,
            Letter::E(k, n) => m.0[layout.e_slot(k as usize)] = n,
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn f(&self, layout: Layout) -> &[u16] {
        &self.0[..layout.nu]
    }

    pub fn h(&self, layout: Layout) -> &[u16] {
        &self.0[layout.nu..layout.nu + layout.l]
    }

    pub fn e(&self, layout: Layout) -> &[u16] {
        &self.0[layout.nu + layout.l..]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    /// Factors in multiplication order.
    pub fn letters(&self, layout: Layout) -> Vec<Letter> {
        let mut out = Vec::new();
        let f = self.f(layout);
        for k in (0..layout.nu).rev() {
            if f[k] > 0 {
                out.push(Letter::F(k as u16, f[k]));
            }
        }
        for (i, &n) in self.h(layout).iter().enumerate() {
            if n > 0 {
                out.push(Letter::H(i as u16, n));
            }
        }
        for (k, &n) in self.e(layout).iter().enumerate() {
            if n > 0 {
                out.push(Letter::E(k as u16, n));
            }
        }
        out
    }

    /// Canonical text form such as `f[0:1]*h[1:2]*e[3:4]`, or `1`.
    pub fn to_text(&self, layout: Layout) -> String {
        let mut out = String::new();
        for x in self.letters(layout) {
            if !out.is_empty() {
                out.push('*');
            }
            let (c, i, n) = match x {
                Letter::F(k, n) => ('f', k, n),
                Letter::H(i, n) => ('h', i, n),
                Letter::E(k, n) => ('e', k, n),
            };
            write!(out, "{}[{}:{}]", c, i, n).unwrap();
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Parses the canonical text form. Factors must appear in canonical order;
    /// zero exponents are dropped.
    pub fn parse(layout: Layout, s: &str) -> Result<Monomial> {
        let s = s.trim();
        let mut m = Monomial::one(layout);
        if s == "1" {
            return Ok(m);
        }
        let bad = |why: &str| Error::Parse(format!("monomial {:?}: {}", s, why));
        // (kind, index) rank of the previous factor in canonical order
        let mut last: Option<(u8, i64)> = None;
        for tok in s.split('*') {
            let tok = tok.trim();
            let kind = tok.chars().next().ok_or_else(|| bad("empty factor"))?;
            let body = tok[1..]
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| bad("expected x[i:n]"))?;
            let (i, n) = body.split_once(':').ok_or_else(|| bad("expected x[i:n]"))?;
            let i: usize = i.parse().map_err(|_| bad("bad index"))?;
            let n: u16 = n.parse().map_err(|_| bad("bad exponent"))?;
            let (rank, slot) = match kind {
                'f' if i < layout.nu => ((0, -(i as i64)), layout.f_slot(i)),
                'h' if i < layout.l => ((1, i as i64), layout.h_slot(i)),
                'e' if i < layout.nu => ((2, i as i64), layout.e_slot(i)),
                _ => return Err(bad("unknown factor or index out of range")),
            };
            if last.is_some_and(|prev| prev >= rank) {
                return Err(bad("factors out of canonical order"));
            }
            last = Some(rank);
            m.0[slot] = n;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: Layout = Layout { nu: 6, l: 2 };

    #[test]
    fn text_round_trip() {
        for s in ["1", "f[0:1]*h[1:2]*e[3:4]", "f[5:2]*f[0:1]", "e[0:1]*e[5:7]", "h[0:3]"] {
            let m = Monomial::parse(L, s).unwrap();
            assert_eq!(m.to_text(L), s);
        }
    }

    #[test]
    fn rejects_noncanonical() {
        assert!(Monomial::parse(L, "e[3:1]*e[1:1]").is_err());
        assert!(Monomial::parse(L, "f[0:1]*f[2:1]").is_err());
        assert!(Monomial::parse(L, "e[1:1]*h[0:1]").is_err());
        assert!(Monomial::parse(L, "e[1:1]*e[1:1]").is_err());
        assert!(Monomial::parse(L, "e[6:1]").is_err());
        assert!(Monomial::parse(L, "g[0:1]").is_err());
    }

    #[test]
    fn zero_exponents_elided() {
        let m = Monomial::parse(L, "e[0:0]*e[2:1]").unwrap();
        assert_eq!(m.to_text(L), "e[2:1]");
    }
}
