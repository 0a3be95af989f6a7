use serde::Serialize;

use super::{Family, RootSystem};
use crate::error::{Error, Result};

/// Which row of the exponent table applies to `(type, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExponentCase {
    /// Every root gets exponent `r`.
    Full,
    /// `B_l`, p = 2.
    B2,
    /// `C_l`, p = 2.
    C2,
    /// `F₄`, p = 2.
    F2,
    /// `G₂`, p = 2.
    G2,
    /// `G₂`, p = 3.
    G3,
}

impl ExponentCase {
    pub fn label(self) -> char {
        match self {
            ExponentCase::Full => 'a',
            ExponentCase::B2 => 'b',
            ExponentCase::C2 => 'c',
            ExponentCase::F2 => 'd',
            ExponentCase::G2 => 'e',
            ExponentCase::G3 => 'f',
        }
    }

    /// Which roots drop to exponent `r − 1`, in words.
    pub fn describe(self) -> &'static str {
        match self {
            ExponentCase::Full => "every positive root keeps exponent r and no extra generators are needed",
            ExponentCase::B2 => {
                "type B at p = 2: exponent r - 1 on a_i+..+a_(j-1) + 2(a_j+..+a_l), one extra generator at a_(l-1)+2a_l"
            }
            ExponentCase::C2 => "type C at p = 2: exponent r - 1 and an extra generator on each 2(a_i+..+a_(l-1)) + a_l",
            ExponentCase::F2 => {
                "F4 at p = 2: exponent r - 1 on nine long roots, extra generators at a2+2a3 and a2+2a3+2a4"
            }
            ExponentCase::G2 => "G2 at p = 2: exponent r - 1 on 2a1+a2, 3a1+a2, 3a1+2a2, extra generator at 2a1+a2",
            ExponentCase::G3 => "G2 at p = 3: exponent r - 1 on 3a1+a2, 3a1+2a2, extra generator at 3a1+a2",
        }
    }
}

/// Per-root exponents `a_α ∈ {r−1, r}` describing the subalgebra generated
/// by `e_i^(p^s)`, `s < r`, together with the extra generator roots `Θ`.
#[derive(Clone, Debug)]
pub struct ExponentTable {
    pub p: u32,
    pub r: u32,
    pub case: ExponentCase,
    a: Vec<u32>,
    theta: Vec<usize>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl ExponentTable {
    pub fn new(rs: &RootSystem, p: u32, r: u32) -> Result<ExponentTable> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{} is not prime", p)));
        }
        if r == 0 {
            return Err(Error::Config("level r must be at least 1".into()));
        }
        let l = rs.rank();
        let nu = rs.num_positive();
        let vec_of = |f: &dyn Fn(usize) -> i32| -> Vec<i32> { (0..l).map(f).collect() };
        let (case, reduced, theta): (ExponentCase, Vec<Vec<i32>>, Vec<Vec<i32>>) =
            match (rs.cartan_type().family, p) {
                (Family::B, 2) => {
                    let mut red = Vec::new();
                    for i in 0..l {
                        for j in i + 1..l {
                            red.push(vec_of(&|k| if k < i { 0 } else if k < j { 1 } else { 2 }));
                        }
                    }
                    let theta = vec_of(&|k| if k + 2 == l { 1 } else if k + 1 == l { 2 } else { 0 });
                    (ExponentCase::B2, red, vec![theta])
                }
                (Family::C, 2) => {
                    let red: Vec<Vec<i32>> = (0..l - 1)
                        .map(|i| vec_of(&|k| if k + 1 == l { 1 } else if k >= i { 2 } else { 0 }))
                        .collect();
                    (ExponentCase::C2, red.clone(), red)
                }
                (Family::F, 2) => {
                    let red = [
                        [0, 1, 2, 0],
                        [1, 1, 2, 0],
                        [1, 2, 2, 0],
                        [0, 1, 2, 2],
                        [1, 1, 2, 2],
                        [1, 2, 2, 2],
                        [1, 2, 4, 2],
                        [1, 3, 4, 2],
                        [2, 3, 4, 2],
                    ];
                    let theta = vec![vec![0, 1, 2, 0], vec![0, 1, 2, 2]];
                    (ExponentCase::F2, red.iter().map(|v| v.to_vec()).collect(), theta)
                }
                (Family::G, 2) => {
                    let red = vec![vec![2, 1], vec![3, 1], vec![3, 2]];
                    (ExponentCase::G2, red, vec![vec![2, 1]])
                }
                (Family::G, 3) => {
                    let red = vec![vec![3, 1], vec![3, 2]];
                    (ExponentCase::G3, red, vec![vec![3, 1]])
                }
                _ => (ExponentCase::Full, Vec::new(), Vec::new()),
            };
        let lookup = |v: &Vec<i32>| {
            rs.id_of(v)
                .filter(|&id| rs.is_positive(id))
                .ok_or_else(|| Error::Invariant(format!("{:?} is not a positive root", v)))
        };
        let mut a = vec![r; nu];
        for v in &reduced {
            a[lookup(v)?] = r - 1;
        }
        let mut theta: Vec<usize> = theta.iter().map(lookup).collect::<Result<_>>()?;
        theta.sort_unstable();
        Ok(ExponentTable { p, r, case, a, theta })
    }

    /// `a_α` for a positive root id.
    pub fn exponent(&self, id: usize) -> u32 {
        self.a[id]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    /// `p^{a_α}`, the number of allowed divided-power indices for `e_α`.
    pub fn bound(&self, id: usize) -> u64 {
        (self.p as u64).pow(self.a[id])
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// Roots with `a_α = r − 1`.
    pub fn reduced_roots(&self) -> Vec<usize> {
        (0..self.a.len()).filter(|&k| self.a[k] + 1 == self.r).collect()
    }

    /// `Π_α p^{a_α}`.
    pub fn dimension(&self) -> u128 {
        let total: u32 = self.a.iter().sum();
        (self.p as u128).pow(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced(f: Family, l: usize, p: u32) -> Vec<String> {
        let rs = RootSystem::new(f, l).unwrap();
        let t = rs.exponent_table(p, 2).unwrap();
        t.reduced_roots().iter().map(|&k| rs.name(k)).collect()
    }

    #[test]
    fn cases() {
        assert_eq!(reduced(Family::B, 2, 2), ["a1+2a2"]);
        assert_eq!(reduced(Family::B, 3, 2), ["a2+2a3", "a1+a2+2a3", "a1+2a2+2a3"]);
        assert_eq!(reduced(Family::C, 3, 2), ["2a2+a3", "2a1+2a2+a3"]);
        assert_eq!(reduced(Family::G, 2, 2), ["2a1+a2", "3a1+a2", "3a1+2a2"]);
        assert_eq!(reduced(Family::G, 2, 3), ["3a1+a2", "3a1+2a2"]);
        assert!(reduced(Family::G, 2, 5).is_empty());
        assert!(reduced(Family::A, 3, 2).is_empty());
        assert!(reduced(Family::B, 3, 3).is_empty());
        assert_eq!(reduced(Family::F, 4, 2).len(), 9);
    }

    #[test]
    fn theta_and_dimension() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        let t = rs.exponent_table(2, 1).unwrap();
        assert_eq!(t.case, ExponentCase::B2);
        assert_eq!(t.theta().iter().map(|&k| rs.name(k)).collect::<Vec<_>>(), ["a1+2a2"]);
        assert_eq!(t.dimension(), 8);
        let g2 = RootSystem::new(Family::G, 2).unwrap();
        assert_eq!(g2.exponent_table(2, 2).unwrap().dimension(), 512);
        assert_eq!(g2.exponent_table(3, 2).unwrap().dimension(), 59049);
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let t = a3.exponent_table(2, 1).unwrap();
        assert_eq!(t.case, ExponentCase::Full);
        assert!(t.theta().is_empty());
        assert!(a3.exponent_table(4, 1).is_err());
        assert!(a3.exponent_table(2, 0).is_err());
    }
}
