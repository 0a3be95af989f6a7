//! The ordinary PBW basis `Π f^{a} · Π h^{b} · Π e^{c}` (plain powers) over ℚ,
//! with its own straightening by adjacent swaps `yx = xy + [y, x]`, and the
//! triangular change of basis to divided powers and binomials.
//!
//! This route shares nothing with the divided-power engine except the Lie
//! bracket, which makes it a useful cross-check.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::chevalley::LieElement;

use super::algebra::Algebra;
use super::element::Element;
use super::monomial::{Layout, Monomial};
use super::ring::Rationals;

/// Element of the enveloping algebra over ℚ in the ordinary PBW basis. The
/// monomial exponents are plain powers, laid out as in [`Monomial`].
pub type OrdinaryElement = BTreeMap<Monomial, BigRational>;

/// Exponents indexed by multiplication order: `f_ν, …, f_1, h_1, …, h_l, e_1, …, e_ν`.
type Word = Vec<u16>;

pub struct OrdinaryEngine {
    alg: Arc<Algebra>,
    memo: Mutex<FxHashMap<(Word, usize), Vec<(Word, BigInt)>>>,
}

impl OrdinaryEngine {
    pub fn new(alg: &Arc<Algebra>) -> OrdinaryEngine {
        OrdinaryEngine { alg: alg.clone(), memo: Mutex::new(FxHashMap::default()) }
    }

    fn layout(&self) -> Layout {
        self.alg.layout()
    }

    fn to_word(&self, m: &Monomial) -> Word {
        let l = self.layout();
        let mut w = m.0.to_vec();
        w[..l.nu].reverse();
        w
    }

    fn from_word(&self, w: &Word) -> Monomial {
        let l = self.layout();
        let mut v = w.clone();
        v[..l.nu].reverse();
        Monomial(v.into_boxed_slice())
    }

    /// Lie basis element for an order index.
    fn lie(&self, idx: usize) -> LieElement {
        let l = self.layout();
        let t = self.alg.cartan_type();
        let rs = self.alg.root_system();
        if idx < l.nu {
            LieElement::root_vector(t, rs.neg(self.alg.root_at(l.nu - 1 - idx)))
        } else if idx < l.nu + l.l {
            LieElement::cartan(t, idx - l.nu)
        } else {
            LieElement::root_vector(t, self.alg.root_at(idx - l.nu - l.l))
        }
    }

    fn index_of_root(&self, id: usize) -> usize {
        let l = self.layout();
        let rs = self.alg.root_system();
        let k = self.alg.order().position(rs.abs(id));
        if rs.is_positive(id) {
            l.nu + l.l + k
        } else {
            l.nu - 1 - k
        }
    }

    /// `w · x_idx` in normal order.
    fn rmul(&self, w: &Word, idx: usize) -> Vec<(Word, BigInt)> {
        let last = w.iter().rposition(|&x| x > 0);
        if last.is_none_or(|j| j <= idx) {
            let mut out = w.clone();
            out[idx] += 1;
            return vec![(out, BigInt::one())];
        }
        let key = (w.clone(), idx);
        if let Some(t) = self.memo.lock().unwrap().get(&key) {
            return t.clone();
        }
        let j = last.unwrap();
        let mut w0 = w.clone();
        w0[j] -= 1;
        let mut acc: FxHashMap<Word, BigInt> = FxHashMap::default();
        // w0 y x = (w0 x) y + w0 [y, x]
        for (t, c) in self.rmul(&w0, idx) {
            for (t2, c2) in self.rmul(&t, j) {
                *acc.entry(t2).or_insert_with(BigInt::zero) += &c * c2;
            }
        }
        let br = self.alg.constants().bracket(&self.lie(j), &self.lie(idx)).expect("same algebra");
        let mut parts: Vec<(usize, i64)> = br.e.iter().map(|(&id, &c)| (self.index_of_root(id), c)).collect();
        let nu = self.layout().nu;
        parts.extend(br.h.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (nu + i, c)));
        for (k, c) in parts {
            for (t, c2) in self.rmul(&w0, k) {
                *acc.entry(t).or_insert_with(BigInt::zero) += c2 * c;
            }
        }
        let out: Vec<(Word, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn multiply(&self, x: &OrdinaryElement, y: &OrdinaryElement) -> OrdinaryElement {
        let mut out = OrdinaryElement::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let mut cur: Vec<(Word, BigInt)> = vec![(self.to_word(a), BigInt::one())];
                for (idx, &n) in self.to_word(b).iter().enumerate() {
                    for _ in 0..n {
                        let mut acc: FxHashMap<Word, BigInt> = FxHashMap::default();
                        for (w, c) in &cur {
                            for (t, c2) in self.rmul(w, idx) {
                                *acc.entry(t).or_insert_with(BigInt::zero) += c * c2;
                            }
                        }
                        cur = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    }
                }
                for (w, c) in cur {
                    let entry = out.entry(self.from_word(&w)).or_insert_with(BigRational::zero);
                    *entry += BigRational::from_integer(c) * ca * cb;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Rewrites plain powers as divided powers and binomials.
    pub fn to_divided(&self, x: &OrdinaryElement) -> Element<Rationals> {
        let l = self.layout();
        let mut out = Element::zero(&self.alg, Rationals);
        for (m, c) in x {
            let mut terms: Vec<(Monomial, BigRational)> = vec![(m.clone(), c.clone())];
            for slot in 0..l.len() {
                let n = m.0[slot];
                if n == 0 {
                    continue;
                }
                let is_h = (l.nu..l.nu + l.l).contains(&slot);
                let mut next = Vec::new();
                for (t, tc) in &terms {
                    if is_h {
                        // h^n = Σ_k S(n, k) k! (h choose k)
                        for k in 1..=n {
                            let s = stirling2(n as usize, k as usize) * factorial(k as usize);
                            let mut t = t.clone();
                            t.0[slot] = k;
                            next.push((t, tc * BigRational::from_integer(s)));
                        }
                    } else {
                        next.push((t.clone(), tc * BigRational::from_integer(factorial(n as usize))));
                    }
                }
                terms = next;
            }
            for (t, tc) in terms {
                out.add_term(t, tc);
            }
        }
        out
    }

    /// Rewrites divided powers and binomials as plain powers.
    pub fn to_ordinary(&self, x: &Element<Rationals>) -> OrdinaryElement {
        let l = self.layout();
        let mut out = OrdinaryElement::new();
        for (m, c) in x.terms() {
            let mut terms: Vec<(Monomial, BigRational)> = vec![(m.clone(), c.clone())];
            for slot in 0..l.len() {
                let n = m.0[slot];
                if n == 0 {
                    continue;
                }
                let is_h = (l.nu..l.nu + l.l).contains(&slot);
                let nf = BigRational::from_integer(factorial(n as usize));
                let mut next = Vec::new();
                for (t, tc) in &terms {
                    if is_h {
                        // (h choose n) = Σ_j s(n, j) h^j / n!
                        for j in 1..=n {
                            let s = stirling1(n as usize, j as usize);
                            if s.is_zero() {
                                continue;
                            }
                            let mut t = t.clone();
                            t.0[slot] = j;
                            next.push((t, tc * BigRational::from_integer(s) / &nf));
                        }
                    } else {
                        next.push((t.clone(), tc / &nf));
                    }
                }
                terms = next;
            }
            for (t, tc) in terms {
                *out.entry(t).or_insert_with(BigRational::zero) += tc;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Stirling numbers of the second kind.
fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Signed Stirling numbers of the first kind: `x(x−1)⋯(x−n+1) = Σ s(n,j) x^j`.
fn stirling1(n: usize, k: usize) -> BigInt {
    let mut poly = vec![BigInt::one()];
    for i in 0..n {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * BigInt::from(i);
        }
        poly = next;
    }
    poly.get(k).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, Family};

    fn alg() -> Arc<Algebra> {
        Algebra::new(CartanType::new(Family::A, 1).unwrap(), None).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn stirling() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling1(3, 1), BigInt::from(2));
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
    }

    #[test]
    fn conversions() {
        let a = alg();
        let o = OrdinaryEngine::new(&a);
        let l = a.layout();
        let mut x = OrdinaryElement::new();
        x.insert(Monomial::parse(l, "e[0:2]").unwrap(), q(1));
        let d = o.to_divided(&x);
        assert_eq!(d.coefficient(&Monomial::parse(l, "e[0:2]").unwrap()), q(2));
        let mut h = OrdinaryElement::new();
        h.insert(Monomial::parse(l, "h[0:2]").unwrap(), q(1));
        let d = o.to_divided(&h);
        assert_eq!(d.coefficient(&Monomial::parse(l, "h[0:2]").unwrap()), q(2));
        assert_eq!(d.coefficient(&Monomial::parse(l, "h[0:1]").unwrap()), q(1));
        assert_eq!(o.to_ordinary(&d), h);
        let one = Element::one(&a, Rationals);
        assert_eq!(o.to_divided(&o.to_ordinary(&one)), one);
    }

    #[test]
    fn sl2_commutator() {
        let a = alg();
        let o = OrdinaryEngine::new(&a);
        let l = a.layout();
        let mk = |s: &str| {
            let mut x = OrdinaryElement::new();
            x.insert(Monomial::parse(l, s).unwrap(), q(1));
            x
        };
        let p = o.multiply(&mk("e[0:1]"), &mk("f[0:1]"));
        let mut want = mk("f[0:1]*e[0:1]");
        want.insert(Monomial::parse(l, "h[0:1]").unwrap(), q(1));
        assert_eq!(p, want);
    }
}
