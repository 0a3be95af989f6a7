use serde::Serialize;

use super::RootSystem;
use crate::error::{Error, Result};

/// An edge `β = α + α_i` of the Hasse diagram of `Φ⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HasseEdge {
    pub from: usize,
    pub simple: usize,
    pub to: usize,
}

/// The Hasse diagram of `Φ⁺` together with the connected components of its
/// long-root subdiagram.
///
/// `c0` is the long component containing the long simple roots and `theta`
/// holds the unique minimal vertex of every other long component. In the
/// simply-laced case there is one component, all of `Φ⁺`, and `theta` is
/// empty.
#[derive(Clone, Debug)]
pub struct HasseData {
    pub edges: Vec<HasseEdge>,
    pub up: Vec<Vec<HasseEdge>>,
    pub down: Vec<Vec<HasseEdge>>,
    pub long_components: Vec<Vec<usize>>,
    pub short_roots: Vec<usize>,
    pub c0: Vec<usize>,
    pub theta: Vec<usize>,
}

impl HasseData {
    pub fn new(rs: &RootSystem) -> Result<HasseData> {
        let nu = rs.num_positive();
        let l = rs.rank();
        let mut edges = Vec::new();
        let mut up = vec![Vec::new(); nu];
        let mut down = vec![Vec::new(); nu];
        for a in 0..nu {
            for i in 0..l {
                if let Some(b) = rs.add(a, i) {
                    let e = HasseEdge { from: a, simple: i, to: b };
                    edges.push(e);
                    up[a].push(e);
                    down[b].push(e);
                }
            }
        }

        let long: Vec<usize> = (0..nu).filter(|&k| rs.is_long(k)).collect();
        let short_roots: Vec<usize> = (0..nu).filter(|&k| !rs.is_long(k)).collect();
        let long_components = components(nu, &long, &edges);
        let fail = |msg: String| Err(Error::Invariant(format!("{}: {}", rs.cartan_type(), msg)));

        if rs.cartan_type().is_simply_laced() {
            return Ok(HasseData {
                edges,
                up,
                down,
                long_components,
                short_roots,
                c0: (0..nu).collect(),
                theta: Vec::new(),
            });
        }

        let long_simple: Vec<usize> = (0..l).filter(|&i| rs.is_long(i)).collect();
        let c0_index: Vec<usize> = long_components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|k| long_simple.contains(k)))
            .map(|(n, _)| n)
            .collect();
        if c0_index.len() != 1 {
            return fail(format!("long simple roots lie in {} components", c0_index.len()));
        }
        let c0 = long_components[c0_index[0]].clone();

        let short_components = components(nu, &short_roots, &edges);
        if short_components.len() != 1 || !short_components[0].iter().any(|&k| k < l) {
            return fail("short subdiagram is not connected through a short simple root".into());
        }
        for e in &edges {
            if rs.is_long(e.from) && rs.is_long(e.to) && !rs.is_long(e.simple) {
                return fail(format!("long edge {} -> {} has a short label", rs.name(e.from), rs.name(e.to)));
            }
        }

        let mut theta = Vec::new();
        for (n, comp) in long_components.iter().enumerate() {
            if n == c0_index[0] {
                continue;
            }
            let minimal: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&v| !down[v].iter().any(|e| comp.contains(&e.from)))
                .collect();
            if minimal.len() != 1 {
                return fail(format!("a long component has {} minimal vertices", minimal.len()));
            }
            theta.push(minimal[0]);
        }
        Ok(HasseData { edges, up, down, long_components, short_roots, c0, theta })
    }

    pub fn in_c0(&self, id: usize) -> bool {
        self.c0.contains(&id)
    }
}

/// Connected components of the subgraph induced on `vertices`, each sorted,
/// listed by smallest member.
fn components(nu: usize, vertices: &[usize], edges: &[HasseEdge]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..nu).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let inside = |v: usize| vertices.contains(&v);
    for e in edges {
        if inside(e.from) && inside(e.to) {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &v in vertices {
        let r = find(&mut parent, v);
        match roots.iter().position(|&x| x == r) {
            Some(n) => comps[n].push(v),
            None => {
                roots.push(r);
                comps.push(vec![v]);
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::super::Family;
    use super::*;

    fn theta_names(f: Family, l: usize) -> Vec<String> {
        let rs = RootSystem::new(f, l).unwrap();
        rs.hasse().unwrap().theta.iter().map(|&t| rs.name(t)).collect()
    }

    #[test]
    fn f4_components() {
        let rs = RootSystem::new(Family::F, 4).unwrap();
        let h = rs.hasse().unwrap();
        assert_eq!(h.long_components.len(), 4);
        assert_eq!(h.theta.len(), 3);
        let names: Vec<String> = h.theta.iter().map(|&t| rs.name(t)).collect();
        assert_eq!(names, ["a2+2a3", "a2+2a3+2a4", "a1+2a2+4a3+2a4"]);
    }

    #[test]
    fn c_components_are_points() {
        for l in 2..=5 {
            let rs = RootSystem::new(Family::C, l).unwrap();
            let h = rs.hasse().unwrap();
            assert_eq!(h.long_components.len(), l);
            assert!(h.long_components.iter().all(|c| c.len() == 1));
        }
        assert_eq!(theta_names(Family::C, 3), ["2a2+a3", "2a1+2a2+a3"]);
    }

    #[test]
    fn small_types() {
        assert!(theta_names(Family::A, 2).is_empty());
        assert_eq!(theta_names(Family::B, 2), ["a1+2a2"]);
        assert_eq!(theta_names(Family::B, 3), ["a2+2a3"]);
        assert_eq!(theta_names(Family::G, 2), ["3a1+a2"]);
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.hasse().unwrap().long_components, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn edges_raise_height_by_one() {
        let rs = RootSystem::new(Family::F, 4).unwrap();
        for e in rs.hasse().unwrap().edges {
            assert_eq!(rs.root(e.to).height, rs.root(e.from).height + 1);
        }
    }
}
