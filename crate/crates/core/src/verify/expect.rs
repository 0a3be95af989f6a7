use std::sync::OnceLock;

use serde::Deserialize;

use crate::rootsys::CartanType;

const BUILTIN: &str = include_str!("../../data/expectations.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct DimensionEntry {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub p: u32,
    pub r: u32,
    pub value: u128,
    pub provenance: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MembershipEntry {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub p: u32,
    pub root: String,
    pub member: bool,
    pub provenance: String,
}

/// Expected dimensions and memberships with their provenance strings.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct Expectations {
    #[serde(default)]
    pub dimension: Vec<DimensionEntry>,
    #[serde(default)]
    pub membership: Vec<MembershipEntry>,
}

impl Expectations {
    pub fn parse(s: &str) -> crate::Result<Expectations> {
        toml::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    /// The table compiled into the crate.
    pub fn builtin() -> &'static Expectations {
        static CELL: OnceLock<Expectations> = OnceLock::new();
        CELL.get_or_init(|| Expectations::parse(BUILTIN).expect("built-in expectations parse"))
    }

    pub fn dimension(&self, t: CartanType, p: u32, r: u32) -> Option<&DimensionEntry> {
        let name = t.to_string();
        self.dimension.iter().find(|d| d.cartan_type == name && d.p == p && d.r == r)
    }

    pub fn memberships(&self, t: CartanType, p: u32) -> impl Iterator<Item = &MembershipEntry> {
        let name = t.to_string();
        self.membership.iter().filter(move |m| m.cartan_type == name && m.p == p)
    }
}
