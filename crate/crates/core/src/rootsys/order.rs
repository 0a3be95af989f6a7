use serde::Serialize;

use super::{Family, RootSystem};
use crate::error::{Error, Result};

/// A convex order `β_1 ≺ … ≺ β_ν` on the positive roots, read off a reduced
/// word `s_{i_1}⋯s_{i_ν}` of the longest Weyl group element via
/// `β_k = s_{i_1}⋯s_{i_{k−1}}(α_{i_k})`.
///
/// Simple indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexOrder {
    word: Vec<usize>,
    order: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl ConvexOrder {
    /// Without a word, G₂ uses `s₂s₁s₂s₁s₂s₁` and every other type the greedy
    /// word that always appends the smallest ascent.
    pub fn new(rs: &RootSystem, word: Option<&[usize]>) -> Result<ConvexOrder> {
        let word = match word {
            Some(w) => w.to_vec(),
            None if rs.cartan_type().family == Family::G => vec![1, 0, 1, 0, 1, 0],
            None => greedy_word(rs),
        };
        let nu = rs.num_positive();
        let l = rs.rank();
        if word.len() != nu {
            return Err(Error::InvalidWord(format!("length {} but ν = {}", word.len(), nu)));
        }
        if let Some(&i) = word.iter().find(|&&i| i >= l) {
            return Err(Error::InvalidWord(format!("index {} out of range", i + 1)));
        }
        let mut order = Vec::with_capacity(nu);
        let mut position = vec![usize::MAX; nu];
        for k in 0..nu {
            let beta = apply_prefix(rs, &word[..k], word[k]);
            let id = rs
                .id_of(&beta)
                .filter(|&id| rs.is_positive(id) && position[id] == usize::MAX)
                .ok_or_else(|| Error::InvalidWord(format!("{:?} is not reduced", one_based(&word))))?;
            position[id] = k;
            order.push(id);
        }
        let co = ConvexOrder { word, order, position };
        co.check_convex(rs)?;
        Ok(co)
    }

    fn check_convex(&self, rs: &RootSystem) -> Result<()> {
        let nu = rs.num_positive();
        for a in 0..nu {
            for b in 0..nu {
                if let Some(c) = rs.add(a, b) {
                    let (pa, pb, pc) = (self.position[a], self.position[b], self.position[c]);
                    if pa < pb && !(pa < pc && pc < pb) {
                        return Err(Error::Invariant(format!(
                            "order is not convex at {} + {}",
                            rs.name(a),
                            rs.name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Root ids `β_1, …, β_ν`.
    pub fn roots(&self) -> &[usize] {
        &self.order
    }

    pub fn root_at(&self, k: usize) -> usize {
        self.order[k]
    }

    /// Position of a positive root id in the order.
    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

/// `s_{w_0}⋯s_{w_{k−1}}(α_i)`.
fn apply_prefix(rs: &RootSystem, prefix: &[usize], i: usize) -> Vec<i32> {
    let mut v = vec![0; rs.rank()];
    v[i] = 1;
    for &j in prefix.iter().rev() {
        v = rs.reflect(j, &v);
    }
    v
}

fn greedy_word(rs: &RootSystem) -> Vec<usize> {
    let mut word: Vec<usize> = Vec::new();
    loop {
        let next = (0..rs.rank()).find(|&i| {
            let v = apply_prefix(rs, &word, i);
            v.iter().all(|&c| c >= 0)
        });
        match next {
            Some(i) => word.push(i),
            None => return word,
        }
    }
}

/// Parses a word such as `212121` or `2,1,2,1,2,1` (1-based indices).
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let parts: Vec<&str> = if s.contains(',') || s.contains(' ') {
        s.split([',', ' ']).filter(|t| !t.is_empty()).collect()
    } else {
        s.split("").filter(|t| !t.is_empty()).collect()
    };
    parts
        .iter()
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::InvalidWord(format!("cannot read {:?}", s))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(rs: &RootSystem, co: &ConvexOrder) -> Vec<String> {
        co.roots().iter().map(|&id| rs.name(id)).collect()
    }

    #[test]
    fn g2_default() {
        let rs = RootSystem::new(Family::G, 2).unwrap();
        let co = rs.convex_order(None).unwrap();
        assert_eq!(names(&rs, &co), ["a2", "a1+a2", "3a1+2a2", "2a1+a2", "3a1+a2", "a1"]);
    }

    #[test]
    fn small_orders() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(names(&a1, &a1.convex_order(None).unwrap()), ["a1"]);
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let co = a2.convex_order(Some(&[0, 1, 0])).unwrap();
        assert_eq!(names(&a2, &co), ["a1", "a1+a2", "a2"]);
    }

    #[test]
    fn rejects_bad_words() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert!(a2.convex_order(Some(&[0, 0, 1])).is_err());
        assert!(a2.convex_order(Some(&[0, 1])).is_err());
        assert!(a2.convex_order(Some(&[0, 1, 2])).is_err());
    }

    #[test]
    fn defaults_exist_for_all_types() {
        for (f, l) in [
            (Family::A, 5),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 8),
            (Family::F, 4),
        ] {
            let rs = RootSystem::new(f, l).unwrap();
            assert_eq!(rs.convex_order(None).unwrap().len(), rs.num_positive());
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("212121").unwrap(), vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(parse_word("1, 2,1").unwrap(), vec![0, 1, 0]);
        assert!(parse_word("102").is_err());
    }
}
