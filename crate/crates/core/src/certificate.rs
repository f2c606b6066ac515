//! JSON certificates for solver, search and inequality results.
//!
//! Keys are emitted in a fixed order (struct field order, with `parameters`
//! and `result` as sorted maps), and every field survives a round trip.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::family::{CoverResult, Family};
use crate::io::{format_subspace, FamilyFile};
use crate::maxsearch::SearchCertificate;
use crate::qcount::{IneqReport, Step};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: BTreeMap<String, Value>,
    /// Inline family-file text.
    pub witness: Option<String>,
    pub steps: Vec<Step>,
    pub optimal: Option<bool>,
    pub nodes: Option<u64>,
    pub tool_version: String,
}

fn map<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Certificate {
    pub fn from_cover(family: &FamilyFile, r: &CoverResult) -> Self {
        let f = &family.family;
        let mut parameters = map([
            ("q", f.field().q().into()),
            ("n", family.n().into()),
            ("m", f.m().into()),
            ("count", f.len().into()),
        ]);
        if let Some(l) = family.l {
            parameters.insert("l".into(), l.into());
        }
        let witness_family = FamilyFile {
            family: Family::from_members(vec![r.witness.clone()]).expect("one member"),
            l: family.l,
        };
        Certificate {
            kind: "covering-number".into(),
            parameters,
            result: map([
                ("tau", r.tau.into()),
                ("witness_basis", format_subspace(&r.witness).into()),
                ("intersecting", r.intersecting.map_or(Value::Null, Value::from)),
            ]),
            witness: Some(witness_family.to_text()),
            steps: Vec::new(),
            optimal: Some(true),
            nodes: Some(r.nodes_explored),
            tool_version: TOOL_VERSION.into(),
        }
    }

    pub fn from_search(c: &SearchCertificate) -> Self {
        let p = &c.params;
        let mut parameters = map([
            ("q", p.q.into()),
            ("n", p.n.into()),
            ("m", p.m.into()),
            ("min_tau", p.min_tau.into()),
        ]);
        parameters.insert(
            "target".into(),
            p.target.map_or(Value::from("maximize"), Value::from),
        );
        let mut result = map([
            ("size", c.size.into()),
            ("wall_time_ms", ((c.wall_time * 1000.0).round() as u64).into()),
        ]);
        if p.target.is_none() {
            result.insert("optima".into(), c.optima.len().into());
            result.insert(
                "all_optima_structured".into(),
                c.all_optima_structured.map_or(Value::Null, Value::from),
            );
        } else {
            result.insert("exists".into(), c.witness.is_some().into());
        }
        Certificate {
            kind: if p.target.is_some() { "search-exists" } else { "search-max" }.into(),
            parameters,
            result,
            witness: c
                .witness
                .as_ref()
                .map(|f| FamilyFile::plain(f.clone()).to_text()),
            steps: Vec::new(),
            optimal: Some(c.optimal),
            nodes: Some(c.nodes),
            tool_version: TOOL_VERSION.into(),
        }
    }

    pub fn from_ineq(r: &IneqReport) -> Self {
        Certificate {
            kind: r.kind.clone(),
            parameters: r.parameters.iter().map(|(k, &v)| (k.clone(), v.into())).collect(),
            result: map([
                ("lhs", r.lhs.to_string().into()),
                ("rhs", r.rhs.to_string().into()),
                ("holds", r.holds.into()),
            ]),
            witness: None,
            steps: r.steps.clone(),
            optimal: None,
            nodes: None,
            tool_version: TOOL_VERSION.into(),
        }
    }

    pub fn witness_family(&self) -> Result<Option<FamilyFile>> {
        self.witness.as_deref().map(FamilyFile::parse).transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}
