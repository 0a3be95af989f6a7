use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Artifact {
    RootSystem,
    Order,
    Constants,
    Tables,
}

impl FromStr for Artifact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Artifact> {
        match s {
            "rootsys" => Ok(Artifact::RootSystem),
            "order" => Ok(Artifact::Order),
            "constants" => Ok(Artifact::Constants),
            "tables" => Ok(Artifact::Tables),
            _ => Err(Error::Config(format!("unknown artifact {:?}; expected rootsys, order, constants or tables", s))),
        }
    }
}

impl fmt::Display for Artifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Artifact::RootSystem => "rootsys",
            Artifact::Order => "order",
            Artifact::Constants => "constants",
            Artifact::Tables => "tables",
        })
    }
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

/// Serializes an artifact: JSON for everything except the structure
/// constants, which are CSV. `word` is 0-based; `p` and `r` only matter for
/// the exponent table.
pub fn dump(artifact: Artifact, t: CartanType, word: Option<&[usize]>, p: u32, r: u32) -> Result<String> {
    let rs = RootSystem::build(t)?;
    let nu = rs.num_positive();
    Ok(match artifact {
        Artifact::RootSystem => {
            let order = rs.convex_order(word)?;
            let hasse = rs.hasse()?;
            let coords = |ids: &mut dyn Iterator<Item = usize>| ids.map(|k| rs.root(k).coords.clone()).collect::<Vec<_>>();
            let edges: Vec<[usize; 3]> = hasse.edges.iter().map(|e| [e.from, e.simple, e.to]).collect();
            pretty(json!({
                "type": t.to_string(),
                "rank": t.rank,
                "simple_roots": coords(&mut (0..t.rank)),
                "positive_roots": coords(&mut (0..nu)),
                "convex_order": order.roots(),
                "hasse_edges": edges,
                "long_components": hasse.long_components,
                "theta": hasse.theta,
            }))
        }
        Artifact::Order => {
            let order = rs.convex_order(word)?;
            let names: Vec<String> = order.roots().iter().map(|&k| rs.name(k)).collect();
            let word: Vec<usize> = order.word().iter().map(|i| i + 1).collect();
            pretty(json!({
                "type": t.to_string(),
                "word": word,
                "ids": order.roots(),
                "roots": names,
            }))
        }
        Artifact::Constants => StructureConstants::new(Arc::new(rs))?.to_csv(),
        Artifact::Tables => {
            let table = rs.exponent_table(p, r)?;
            let a: BTreeMap<String, u32> = (0..nu).map(|k| (rs.name(k), table.exponent(k))).collect();
            let theta: Vec<String> = table.theta().iter().map(|&k| rs.name(k)).collect();
            let reduced: Vec<String> = table.reduced_roots().iter().map(|&k| rs.name(k)).collect();
            pretty(json!({
                "type": t.to_string(),
                "p": p,
                "r": r,
                "case": table.case.describe(),
                "theta": theta,
                "reduced": reduced,
                "a": a,
                "dimension": table.dimension() as u64,
            }))
        }
    })
}
