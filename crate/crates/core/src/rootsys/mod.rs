//! Irreducible root systems in Humphreys' numbering.
//!
//! Roots are interned: the `ν` positive roots get ids `0..ν` sorted by height
//! and then by coordinates in decreasing lexicographic order (so the simple
//! root `α_i` has id `i`), and the negative root `−β` has id `id(β) + ν`.

mod hasse;
mod order;
mod tables;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hasse::{HasseData, HasseEdge};
pub use order::{parse_word, ConvexOrder};
pub use tables::{is_prime, ExponentCase, ExponentTable};

/// Largest rank accepted by [`RootSystem::new`].
pub const DEFAULT_RANK_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Family::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| Error::InvalidType(s.to_string(), "unknown family letter".into()))
    }
}

/// A Dynkin type such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        CartanType::with_cap(family, rank, DEFAULT_RANK_CAP)
    }

    pub fn with_cap(family: Family, rank: usize, cap: usize) -> Result<CartanType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let name = format!("{}{}", family, rank);
        if !ok {
            return Err(Error::InvalidType(name, "not an irreducible Dynkin type".into()));
        }
        if rank > cap {
            return Err(Error::InvalidType(name, format!("rank exceeds the cap {}", cap)));
        }
        Ok(CartanType { family, rank })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CartanType> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string(), "expected a letter followed by a rank".into());
        let family = s.chars().next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank = s[1..].parse::<usize>().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i32>,
    pub height: i32,
    /// `⟨α, α⟩` with short roots normalized to 2.
    pub norm: i32,
    pub length: LengthClass,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.height > 0
    }
}

/// Formats a coordinate vector as `a1+2a2`, or `-a1-a2` for negative roots.
pub fn format_coords(coords: &[i32]) -> String {
    let mut out = String::new();
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("a{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the output of [`format_coords`] back into a coordinate vector.
pub fn parse_coords(s: &str, rank: usize) -> Result<Vec<i32>> {
    let bad = || Error::Parse(format!("cannot read root {:?}", s));
    let mut coords = vec![0i32; rank];
    let s = s.trim();
    if s == "0" {
        return Ok(coords);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let a = rest.find('a').ok_or_else(bad)?;
        let coeff = if a == 0 { 1 } else { rest[..a].parse::<i32>().map_err(|_| bad())? };
        rest = &rest[a + 1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let idx = rest[..end].parse::<usize>().map_err(|_| bad())?;
        if idx == 0 || idx > rank {
            return Err(bad());
        }
        coords[idx - 1] += sign * coeff;
        rest = &rest[end..];
    }
    Ok(coords)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<i32>>,
    roots: Vec<Root>,
    lookup: HashMap<Vec<i32>, usize>,
    // sum[a * 2ν + b] = id of α_a + α_b, or -1
    sum: Vec<i32>,
    // pairing[a * l + i] = ⟨α_a, α_i^∨⟩
    pairing: Vec<i32>,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        RootSystem::build(CartanType::new(family, rank)?)
    }

    pub fn build(cartan_type: CartanType) -> Result<RootSystem> {
        let gram = gram_matrix(cartan_type);
        let l = cartan_type.rank;
        let ip = |u: &[i32], v: &[i32]| -> i32 {
            let mut s = 0;
            for i in 0..l {
                if u[i] == 0 {
                    continue;
                }
                for j in 0..l {
                    s += u[i] * gram[i][j] * v[j];
                }
            }
            s
        };
        let simple: Vec<Vec<i32>> = (0..l)
            .map(|i| {
                let mut v = vec![0; l];
                v[i] = 1;
                v
            })
            .collect();

        // Closure from simple roots, one height at a time, via root strings.
        let mut positive: Vec<Vec<i32>> = simple.clone();
        let mut known: HashMap<Vec<i32>, ()> = positive.iter().map(|v| (v.clone(), ())).collect();
        let mut layer = simple.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..l {
                    if beta == &simple[i] {
                        continue;
                    }
                    let mut p = 0;
                    let mut v = beta.clone();
                    loop {
                        v[i] -= 1;
                        if known.contains_key(&v) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = 2 * ip(beta, &simple[i]) / gram[i][i];
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|u, v| {
            let hu: i32 = u.iter().sum();
            let hv: i32 = v.iter().sum();
            hu.cmp(&hv).then_with(|| v.cmp(u))
        });

        let nu = positive.len();
        let max_norm = (0..l).map(|i| gram[i][i]).max().unwrap_or(2);
        let mut roots = Vec::with_capacity(2 * nu);
        for sign in [1, -1] {
            for v in &positive {
                let coords: Vec<i32> = v.iter().map(|&c| sign * c).collect();
                let norm = ip(&coords, &coords);
                let length = if norm == max_norm { LengthClass::Long } else { LengthClass::Short };
                let height = coords.iter().sum();
                roots.push(Root { coords, height, norm, length });
            }
        }
        let lookup: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();

        let n = 2 * nu;
        let mut sum = vec![-1i32; n * n];
        for a in 0..n {
            for b in 0..n {
                let v: Vec<i32> = (0..l).map(|i| roots[a].coords[i] + roots[b].coords[i]).collect();
                if let Some(&c) = lookup.get(&v) {
                    sum[a * n + b] = c as i32;
                }
            }
        }
        let mut pairing = vec![0i32; n * l];
        for a in 0..n {
            for i in 0..l {
                pairing[a * l + i] = 2 * ip(&roots[a].coords, &simple[i]) / gram[i][i];
            }
        }

        let rs = RootSystem { cartan_type, gram, roots, lookup, sum, pairing };
        let expected = expected_positive_count(cartan_type);
        if rs.num_positive() != expected {
            return Err(Error::Invariant(format!(
                "{} has {} positive roots, expected {}",
                cartan_type,
                rs.num_positive(),
                expected
            )));
        }
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Number of positive roots, `ν`.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple(&self, i: usize) -> usize {
        i
    }

    pub fn is_positive(&self, id: usize) -> bool {
        id < self.num_positive()
    }

    pub fn neg(&self, id: usize) -> usize {
        let nu = self.num_positive();
        if id < nu {
            id + nu
        } else {
            id - nu
        }
    }

    /// The positive root `±α` for a root id.
    pub fn abs(&self, id: usize) -> usize {
        id % self.num_positive()
    }

    pub fn id_of(&self, coords: &[i32]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    /// Looks up a root written as `a1+2a2`.
    pub fn parse_root(&self, s: &str) -> Result<usize> {
        let coords = parse_coords(s, self.rank())?;
        self.id_of(&coords).ok_or_else(|| Error::UnknownRoot(s.to_string()))
    }

    pub fn name(&self, id: usize) -> String {
        format_coords(&self.roots[id].coords)
    }

    pub fn is_long(&self, id: usize) -> bool {
        self.roots[id].length == LengthClass::Long
    }

    pub fn norm(&self, id: usize) -> i32 {
        self.roots[id].norm
    }

    /// Id of `α + β` when it is a root.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.sum[a * self.num_roots() + b];
        (v >= 0).then_some(v as usize)
    }

    pub fn inner(&self, u: &[i32], v: &[i32]) -> i32 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            for j in 0..l {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    /// `⟨α, α_i^∨⟩` for a root id.
    pub fn pairing(&self, id: usize, i: usize) -> i32 {
        self.pairing[id * self.rank() + i]
    }

    /// `⟨v, α_i^∨⟩` for an arbitrary weight in root coordinates.
    pub fn pairing_weight(&self, v: &[i32], i: usize) -> i32 {
        let l = self.rank();
        let s: i32 = (0..l).map(|j| v[j] * self.gram[j][i]).sum();
        2 * s / self.gram[i][i]
    }

    /// `⟨v, α^∨⟩` for a weight `v` and root id `α`.
    pub fn pairing_with_coroot(&self, v: &[i32], id: usize) -> i32 {
        2 * self.inner(v, &self.roots[id].coords) / self.roots[id].norm
    }

    /// Coordinates of the coroot `α^∨` over the simple coroots.
    pub fn coroot_coords(&self, id: usize) -> Vec<i32> {
        let r = &self.roots[id];
        (0..self.rank())
            .map(|i| r.coords[i] * self.gram[i][i] / r.norm)
            .collect()
    }

    /// `s_i(v)` for a weight in root coordinates.
    pub fn reflect(&self, i: usize, v: &[i32]) -> Vec<i32> {
        let c = self.pairing_weight(v, i);
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// The `α`-string through `β`: the largest `p` with `β − pα ∈ Φ` and the
    /// largest `q` with `β + qα ∈ Φ`.
    pub fn root_string(&self, alpha: usize, beta: &[i32]) -> Result<(i32, i32)> {
        let a = &self.roots[alpha].coords;
        let l = self.rank();
        if beta.len() != l {
            return Err(Error::Mismatch(format!("weight of length {} in rank {}", beta.len(), l)));
        }
        let neg: Vec<i32> = a.iter().map(|c| -c).collect();
        if beta == a.as_slice() || beta == neg.as_slice() {
            return Err(Error::ProportionalRoots);
        }
        let walk = |sign: i32| {
            let mut k = 0;
            let mut v = beta.to_vec();
            loop {
                for i in 0..l {
                    v[i] += sign * a[i];
                }
                if self.lookup.contains_key(&v) {
                    k += 1;
                } else {
                    return k;
                }
            }
        };
        Ok((walk(-1), walk(1)))
    }

    /// The default convex order, see [`ConvexOrder`].
    pub fn convex_order(&self, word: Option<&[usize]>) -> Result<ConvexOrder> {
        ConvexOrder::new(self, word)
    }

    pub fn hasse(&self) -> Result<HasseData> {
        HasseData::new(self)
    }

    pub fn exponent_table(&self, p: u32, r: u32) -> Result<ExponentTable> {
        ExponentTable::new(self, p, r)
    }
}

fn expected_positive_count(t: CartanType) -> usize {
    let l = t.rank;
    match t.family {
        Family::A => l * (l + 1) / 2,
        Family::B | Family::C => l * l,
        Family::D => l * (l - 1),
        Family::E => [36, 63, 120][l - 6],
        Family::F => 24,
        Family::G => 6,
    }
}

/// Symmetric bilinear form on the simple roots, short roots of norm 2.
fn gram_matrix(t: CartanType) -> Vec<Vec<i32>> {
    let l = t.rank;
    let mut g = vec![vec![0i32; l]; l];
    let link = |g: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family {
        Family::A => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..l - 1 {
                g[i][i] = 4;
                link(&mut g, i, i + 1, -2);
            }
            g[l - 1][l - 1] = 2;
        }
        Family::C => {
            for i in 0..l - 1 {
                g[i][i] = 2;
            }
            g[l - 1][l - 1] = 4;
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 2, l - 1, -2);
        }
        Family::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 3, l - 1, -1);
        }
        Family::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..l - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(rs: &RootSystem) -> Vec<String> {
        (0..rs.num_positive()).map(|k| rs.name(k)).collect()
    }

    #[test]
    fn counts() {
        for (f, l, n) in [
            (Family::A, 1, 1),
            (Family::A, 4, 10),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 5, 20),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
            (Family::F, 4, 24),
            (Family::G, 2, 6),
        ] {
            assert_eq!(RootSystem::new(f, l).unwrap().num_positive(), n, "{}{}", f, l);
        }
    }

    #[test]
    fn g2_roots() {
        let rs = RootSystem::new(Family::G, 2).unwrap();
        assert_eq!(names(&rs), ["a1", "a2", "a1+a2", "2a1+a2", "3a1+a2", "3a1+2a2"]);
        assert!(!rs.is_long(0));
        assert!(rs.is_long(1));
        assert!(rs.is_long(5));
        assert_eq!(rs.norm(5), 6);
    }

    #[test]
    fn b2_roots() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(names(&rs), ["a1", "a2", "a1+a2", "a1+2a2"]);
        let long: Vec<String> = (0..4).filter(|&k| rs.is_long(k)).map(|k| rs.name(k)).collect();
        assert_eq!(long, ["a1", "a1+2a2"]);
    }

    #[test]
    fn rejects_bad_types() {
        assert!(RootSystem::new(Family::D, 3).is_err());
        assert!(RootSystem::new(Family::G, 3).is_err());
        assert!(RootSystem::new(Family::A, 9).is_err());
        assert!(RootSystem::new(Family::E, 5).is_err());
        assert!("X2".parse::<CartanType>().is_err());
        assert_eq!("b3".parse::<CartanType>().unwrap().to_string(), "B3");
    }

    #[test]
    fn strings() {
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let beta = b2.root(3).coords.clone();
        assert_eq!(b2.root_string(1, &beta).unwrap(), (2, 0));
        assert_eq!(b2.root_string(0, &beta).unwrap(), (0, 0));
        assert!(b2.root_string(3, &beta).is_err());
        let g2 = RootSystem::new(Family::G, 2).unwrap();
        assert_eq!(g2.root_string(0, &[0, 1]).unwrap(), (0, 3));
    }

    #[test]
    fn strings_match_pairings() {
        for (f, l) in [(Family::B, 3), (Family::C, 3), (Family::F, 4), (Family::G, 2), (Family::D, 4)] {
            let rs = RootSystem::new(f, l).unwrap();
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if rs.abs(a) == rs.abs(b) {
                        continue;
                    }
                    let beta = rs.root(b).coords.clone();
                    let (p, q) = rs.root_string(a, &beta).unwrap();
                    assert_eq!(p - q, rs.pairing_with_coroot(&beta, a));
                }
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        assert_eq!(format_coords(&[1, 2]), "a1+2a2");
        assert_eq!(format_coords(&[-1, -1]), "-a1-a2");
        assert_eq!(parse_coords("3a1+2a2", 2).unwrap(), vec![3, 2]);
        assert_eq!(parse_coords("-a1-a2", 2).unwrap(), vec![-1, -1]);
        assert!(parse_coords("a3", 2).is_err());
    }
}
