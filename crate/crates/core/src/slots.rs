//! The nine heuristic slots, their baseline bindings, and the catalog of
//! alternative bodies.
//!
//! Catalog variants are plain-text fixtures under `catalog/<slot>/<name>.txt`
//! holding exactly the text that goes between a slot's marker lines. The
//! build script compiles every fixture shipped with the crate into the
//! library, so each one can also be bound in-process with
//! [`hooks_with_variant`].

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::materializer::{extract_region, SolverTemplate};
use crate::solver::template::{self, HeuristicHooks};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotName {
    Restart,
    RestartCondition,
    RestartConditionUpdate,
    Reduce,
    ReduceCondition,
    Rephase,
    RephaseCondition,
    BumpVar,
    BumpVarHeuristic,
}

impl SlotName {
    /// All slots in their fixed order; a slot's position is its index.
    pub const ALL: [SlotName; 9] = [
        SlotName::Restart,
        SlotName::RestartCondition,
        SlotName::RestartConditionUpdate,
        SlotName::Reduce,
        SlotName::ReduceCondition,
        SlotName::Rephase,
        SlotName::RephaseCondition,
        SlotName::BumpVar,
        SlotName::BumpVarHeuristic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SlotName::Restart => "restart",
            SlotName::RestartCondition => "restart_condition",
            SlotName::RestartConditionUpdate => "restart_condition_update",
            SlotName::Reduce => "reduce",
            SlotName::ReduceCondition => "reduce_condition",
            SlotName::Rephase => "rephase",
            SlotName::RephaseCondition => "rephase_condition",
            SlotName::BumpVar => "bump_var",
            SlotName::BumpVarHeuristic => "bump_var_heuristic",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<SlotName> {
        SlotName::ALL.get(i).copied()
    }

    pub fn start_marker(self) -> String {
        format!("// start {}", self.as_str())
    }

    pub fn end_marker(self) -> String {
        format!("// end {}", self.as_str())
    }
}

impl fmt::Display for SlotName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SlotName {
    type Err = SlotError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SlotName::ALL
            .into_iter()
            .find(|slot| slot.as_str() == s)
            .ok_or_else(|| SlotError::UnknownSlot(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SlotError {
    #[error("unknown slot `{0}`")]
    UnknownSlot(String),
    #[error("no catalog variant `{name}` for slot {slot}")]
    UnknownVariant { slot: SlotName, name: String },
    #[error("catalog has no variants for slot {0}")]
    EmptyCatalog(SlotName),
    #[error("body for slot {0} is empty")]
    EmptyBody(SlotName),
    #[error("configuration is missing slot {0}")]
    MissingSlot(SlotName),
    #[error("reading catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// Where a slot body came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Baseline,
    Catalog(String),
    Proposed(usize),
}

/// One source body per slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicConfiguration {
    pub bodies: BTreeMap<SlotName, String>,
    pub provenance: BTreeMap<SlotName, Provenance>,
}

impl HeuristicConfiguration {
    /// The bodies currently inside `template`'s regions.
    pub fn from_template(template: &SolverTemplate) -> Self {
        let mut bodies = BTreeMap::new();
        let mut provenance = BTreeMap::new();
        for slot in SlotName::ALL {
            let body = extract_region(template, slot).expect("validated template");
            bodies.insert(slot, body.to_string());
            provenance.insert(slot, Provenance::Baseline);
        }
        HeuristicConfiguration { bodies, provenance }
    }

    /// The configuration of the built-in template.
    pub fn baseline() -> Self {
        Self::from_template(&SolverTemplate::builtin())
    }

    pub fn body(&self, slot: SlotName) -> &str {
        &self.bodies[&slot]
    }

    pub fn with_body(
        mut self,
        slot: SlotName,
        body: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self, SlotError> {
        let body = body.into();
        if body.trim().is_empty() {
            return Err(SlotError::EmptyBody(slot));
        }
        self.bodies.insert(slot, body);
        self.provenance.insert(slot, provenance);
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), SlotError> {
        for slot in SlotName::ALL {
            match self.bodies.get(&slot) {
                None => return Err(SlotError::MissingSlot(slot)),
                Some(b) if b.trim().is_empty() => return Err(SlotError::EmptyBody(slot)),
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// The binding made of the template's own slot bodies.
pub fn baseline_hooks() -> HeuristicHooks {
    template::active_hooks()
}

mod generated {
    use crate::solver::template::HeuristicHooks;

    pub(crate) struct EmbeddedVariant {
        pub slot: &'static str,
        pub name: &'static str,
        pub body: &'static str,
        pub bind: fn(&mut HeuristicHooks),
    }

    include!(concat!(env!("OUT_DIR"), "/catalog_gen.rs"));
}

/// Baseline hooks with one slot rebound to a compiled-in catalog variant.
pub fn hooks_with_variant(slot: SlotName, name: &str) -> Result<HeuristicHooks, SlotError> {
    let mut hooks = baseline_hooks();
    bind_variant(&mut hooks, slot, name)?;
    Ok(hooks)
}

pub fn bind_variant(
    hooks: &mut HeuristicHooks,
    slot: SlotName,
    name: &str,
) -> Result<(), SlotError> {
    let v = generated::EMBEDDED
        .iter()
        .find(|v| v.slot == slot.as_str() && v.name == name)
        .ok_or_else(|| SlotError::UnknownVariant {
            slot,
            name: name.to_string(),
        })?;
    (v.bind)(hooks);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogVariant {
    pub name: String,
    pub body: String,
}

/// Named alternative bodies per slot, each list sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<SlotName, Vec<CatalogVariant>>,
}

impl Catalog {
    /// The variants shipped with the crate.
    pub fn builtin() -> Self {
        let mut catalog = Catalog::default();
        for v in generated::EMBEDDED {
            let slot: SlotName = v.slot.parse().expect("build script only emits known slots");
            catalog.insert(slot, v.name, v.body);
        }
        catalog
    }

    /// Loads `<dir>/<slot>/<variant>.txt` fixtures. Directories that are not
    /// slot names are rejected.
    pub fn load_dir(dir: &Path) -> Result<Self, SlotError> {
        let mut catalog = Catalog::default();
        for entry in fs::read_dir(dir)? {
            let entry = entry?;
            if !entry.file_type()?.is_dir() {
                continue;
            }
            let slot: SlotName = entry.file_name().to_string_lossy().parse()?;
            for file in fs::read_dir(entry.path())? {
                let path = file?.path();
                if path.extension().is_some_and(|e| e == "txt") {
                    let name = path.file_stem().unwrap().to_string_lossy().into_owned();
                    catalog.insert(slot, &name, &fs::read_to_string(&path)?);
                }
            }
        }
        Ok(catalog)
    }

    /// One variant per slot, named `baseline`, holding the template's body.
    pub fn baseline_only(template: &SolverTemplate) -> Self {
        let config = HeuristicConfiguration::from_template(template);
        let mut catalog = Catalog::default();
        for slot in SlotName::ALL {
            catalog.insert(slot, "baseline", config.body(slot));
        }
        catalog
    }

    pub fn insert(&mut self, slot: SlotName, name: &str, body: &str) {
        let list = self.entries.entry(slot).or_default();
        list.retain(|v| v.name != name);
        list.push(CatalogVariant {
            name: name.to_string(),
            body: body.to_string(),
        });
        list.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn variants(&self, slot: SlotName) -> &[CatalogVariant] {
        self.entries.get(&slot).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn get(&self, slot: SlotName, name: &str) -> Option<&CatalogVariant> {
        self.variants(slot).iter().find(|v| v.name == name)
    }

    pub fn write_dir(&self, dir: &Path) -> Result<(), SlotError> {
        for (slot, list) in &self.entries {
            let sub = dir.join(slot.as_str());
            fs::create_dir_all(&sub)?;
            for v in list {
                fs::write(sub.join(format!("{}.txt", v.name)), &v.body)?;
            }
        }
        Ok(())
    }
}

/// Built-in catalog variants for a slot given by name.
pub fn catalog_variants(slot: &str) -> Result<Vec<(String, String)>, SlotError> {
    let slot: SlotName = slot.parse()?;
    Ok(Catalog::builtin()
        .variants(slot)
        .iter()
        .map(|v| (v.name.clone(), v.body.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::template::Solver;

    fn empty_solver(vars: usize) -> Solver {
        Solver::new(vars, &[], baseline_hooks(), 0)
    }

    #[test]
    fn nine_slots_round_trip_names() {
        assert_eq!(SlotName::ALL.len(), 9);
        for (i, slot) in SlotName::ALL.into_iter().enumerate() {
            assert_eq!(slot.index(), i);
            assert_eq!(SlotName::from_index(i), Some(slot));
            assert_eq!(slot.as_str().parse::<SlotName>().unwrap(), slot);
        }
        assert!("restart_policy".parse::<SlotName>().is_err());
        assert_eq!(SlotName::from_index(9), None);
    }

    #[test]
    fn every_slot_has_two_catalog_variants() {
        let catalog = Catalog::builtin();
        for slot in SlotName::ALL {
            assert!(catalog.variants(slot).len() >= 2, "{slot}");
            for v in catalog.variants(slot) {
                hooks_with_variant(slot, &v.name).unwrap();
            }
        }
    }

    #[test]
    fn catalog_order_is_deterministic() {
        let a = catalog_variants("reduce_condition").unwrap();
        let b = catalog_variants("reduce_condition").unwrap();
        assert_eq!(a, b);
        let names: Vec<_> = a.iter().map(|(n, _)| n.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(matches!(catalog_variants("nope"), Err(SlotError::UnknownSlot(_))));
    }

    #[test]
    fn mandatory_catalog_entries() {
        let reduce = catalog_variants("reduce_condition").unwrap();
        let (_, body) = reduce.iter().find(|(n, _)| n == "dynamic_threshold").unwrap();
        assert!(body.contains("0.5 + 0.5 * (conflicts / (reduces + 1.0))"));
        let bump = catalog_variants("bump_var").unwrap();
        let (_, body) = bump.iter().find(|(n, _)| n == "overflow_guard_1e100").unwrap();
        assert!(body.contains("1e100"));
    }

    #[test]
    fn baseline_conditions_on_fresh_stats() {
        let hooks = baseline_hooks();
        let mut s = empty_solver(3);
        assert!(!(hooks.restart_condition)(&s));
        assert!(!(hooks.rephase_condition)(&s));
        assert!(!(hooks.reduce_condition)(&s));
        s.stats.reduces = 8192;
        s.stats.reduce_limit = 8192;
        s.stats.conflicts = 8200;
        assert!((hooks.reduce_condition)(&s));
        s.stats.conflicts = 8201;
        assert!(!(hooks.reduce_condition)(&s));
    }

    #[test]
    fn dynamic_threshold_period() {
        // threshold = 0.5 + 0.5 * conflicts / (reduces + 1); the reduce fires
        // when conflicts is a multiple of its integer part.
        let threshold = |c: f64, r: f64| 0.5 + 0.5 * (c / (r + 1.0));
        assert_eq!(threshold(100.0, 0.0), 50.5);

        let hooks = hooks_with_variant(SlotName::ReduceCondition, "dynamic_threshold").unwrap();
        let mut s = empty_solver(1);
        s.stats.reduce_limit = 0;
        s.stats.reduces = 0;
        s.stats.conflicts = 100;
        assert!((hooks.reduce_condition)(&s));
        s.stats.conflicts = 101;
        assert!(!(hooks.reduce_condition)(&s), "period 50 does not divide 101");
        s.stats.conflicts = 150;
        assert!((hooks.reduce_condition)(&s), "period 75 divides 150");
        // Below the limit nothing fires.
        s.stats.reduce_limit = 10;
        assert!(!(hooks.reduce_condition)(&s));
    }

    #[test]
    fn baseline_bump_and_decay_replay() {
        let hooks = baseline_hooks();
        let mut s = empty_solver(4);
        let inc0 = s.stats.var_inc;
        (hooks.bump_var)(&mut s, 2, 1.0);
        (hooks.bump_var)(&mut s, 2, 1.0);
        // One decay step as applied by the engine after a conflict.
        s.stats.var_inc *= 1.0 / template::VAR_DECAY;
        assert_eq!(s.stats.activity[2], 2.0 * inc0);
        assert_eq!(s.stats.var_inc, inc0 / 0.95);
        assert_eq!(s.stats.activity[0], 0.0);
    }

    #[test]
    fn baseline_bump_rescales_above_limit() {
        let hooks = baseline_hooks();
        let mut s = empty_solver(2);
        s.stats.activity[1] = 5.0;
        s.stats.var_inc = 2e100;
        (hooks.bump_var)(&mut s, 0, 1.0);
        assert!(s.stats.activity.iter().all(|a| a.is_finite() && *a <= 1e100));
        assert!((s.stats.var_inc - 2.0).abs() < 1e-12);
        assert!((s.stats.activity[0] - 2.0).abs() < 1e-12);
        assert!((s.stats.activity[1] - 5e-100).abs() < 1e-110);
    }

    #[test]
    fn luby_restart_schedule() {
        let hooks = baseline_hooks();
        let mut s = empty_solver(1);
        let mut limits = vec![s.stats.restart_limit];
        for _ in 0..8 {
            (hooks.restart_condition_update)(&mut s);
            limits.push(s.stats.restart_limit);
        }
        let luby = [1, 1, 2, 1, 1, 2, 4, 1, 1];
        let expected: Vec<u64> = luby.iter().map(|l| l * 64).collect();
        assert_eq!(limits, expected);
    }

    #[test]
    fn baseline_only_catalog_matches_template() {
        let t = SolverTemplate::builtin();
        let c = Catalog::baseline_only(&t);
        let config = HeuristicConfiguration::baseline();
        for slot in SlotName::ALL {
            assert_eq!(c.variants(slot).len(), 1);
            assert_eq!(c.variants(slot)[0].body, config.body(slot));
        }
    }

    #[test]
    fn catalog_dir_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = Catalog::builtin();
        catalog.write_dir(dir.path()).unwrap();
        assert_eq!(Catalog::load_dir(dir.path()).unwrap(), catalog);
    }

    #[test]
    fn configuration_rejects_empty_body() {
        let c = HeuristicConfiguration::baseline();
        assert!(c.validate().is_ok());
        assert!(matches!(
            c.with_body(SlotName::Reduce, "  \n", Provenance::Baseline),
            Err(SlotError::EmptyBody(SlotName::Reduce))
        ));
    }
}
