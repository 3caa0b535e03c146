//! The fixture catalog, profile admissibility, the planner that
//! constructs a certified Hist-snark for any admissible profile, and
//! the batch Hist scanner.
//!
//! A finite multiset S of positive integers is admissible when every
//! element is at least 5 and, if S is a singleton {c}, additionally
//! c = 6 or c >= 10. For every admissible S the planner produces an
//! explicit snark with a Hist whose outer-cycle profile is exactly S,
//! by recursion: singletons come from base snarks plus chains of the
//! +4 reduction, large multisets split into a pair plus a remainder
//! joined by the disjoint union, elements above 8 shrink by 4 first,
//! and the remaining small pairs and triples dispatch to fixtures or
//! to the +5/+6/+7 reductions.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::certify::{certify_snark_with, CertifyError, CertifyOptions};
use crate::constructions::{
    reduce_i, reduce_ii, reduce_iii, reduce_iv, union_disjoint, union_merge, ConstructError,
    ConstructedHistSnark, Provenance,
};
use crate::fixtures::{self, FixtureData};
use crate::formats::{parse_adjacency_text, parse_outer_cycle_declaration};
use crate::graph::CubicGraph;
use crate::hist::{
    enumerate_hists_with, find_hist_with, outer_cycles, Hist, HistError, HistOptions,
    OuterCycleProfile,
};

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error("fixture {name} is corrupt: {reason}")]
    FixtureCorrupt { name: String, reason: String },
    #[error("profile is not admissible: {reason}")]
    NotAdmissible { reason: String },
    #[error("construction failed: {0}")]
    ConstructionFailed(#[from] ConstructError),
    #[error(transparent)]
    Hist(#[from] HistError),
}

/// A requested profile is the same data as a computed one.
pub type ProfileSpec = OuterCycleProfile;

/// A replayable construction plan is the provenance tree of the result.
pub type RealizationPlan = Provenance;

/// A catalog entry resolves to a Hist-snark with a validated Hist, or
/// to one of the Hist-free snarks.
#[derive(Debug, Clone)]
pub enum Fixture {
    HistSnark(ConstructedHistSnark),
    HistFree { name: String, graph: CubicGraph },
}

fn corrupt(name: &str, reason: impl std::fmt::Display) -> RealizeError {
    RealizeError::FixtureCorrupt {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn load_entry(entry: &FixtureData) -> Result<Fixture, RealizeError> {
    let name = entry.name;
    let graph = parse_adjacency_text(entry.adjacency).map_err(|e| corrupt(name, e))?;
    if graph.n() != entry.expected_n {
        return Err(corrupt(
            name,
            format!("{} vertices, expected {}", graph.n(), entry.expected_n),
        ));
    }
    let Some(expected_profile) = entry.expected_profile else {
        return Ok(Fixture::HistFree {
            name: name.to_string(),
            graph,
        });
    };
    let expected: OuterCycleProfile = expected_profile.into();
    let hist = match entry.outer_cycles {
        Some(declaration) => {
            // The Hist is the complement of the declared outer cycles.
            let cycles =
                parse_outer_cycle_declaration(declaration, &graph).map_err(|e| corrupt(name, e))?;
            let mut tree = crate::bits::EdgeSet::new(graph.edge_count());
            for i in 0..graph.edge_count() {
                if !cycles.iter().any(|c| c.contains(i)) {
                    tree.insert(i);
                }
            }
            let hist = Hist::from_tree_edges(&graph, tree).map_err(|e| corrupt(name, e))?;
            // The recomputed outer cycles must be exactly the declared
            // ones.
            let (recomputed, _) = outer_cycles(&graph, &hist).map_err(|e| corrupt(name, e))?;
            for c in &cycles {
                if !recomputed.contains(c) {
                    return Err(corrupt(name, "declared cycle is not an outer cycle"));
                }
            }
            hist
        }
        None => {
            // Derived fixture: first enumerated Hist with the expected
            // profile.
            let opts = HistOptions::default();
            let mut found = None;
            for h in
                enumerate_hists_with(&graph, usize::MAX, &opts).map_err(|e| corrupt(name, e))?
            {
                let (_, prof) = outer_cycles(&graph, &h).map_err(|e| corrupt(name, e))?;
                if prof == expected {
                    found = Some(h);
                    break;
                }
            }
            found.ok_or_else(|| corrupt(name, format!("no Hist with profile {expected}")))?
        }
    };
    let (_, profile) = outer_cycles(&graph, &hist).map_err(|e| corrupt(name, e))?;
    if profile != expected {
        return Err(corrupt(
            name,
            format!("profile {profile}, expected {expected}"),
        ));
    }
    let provenance = Provenance::fixture(name, &profile, &graph);
    let snark = ConstructedHistSnark::from_graph_and_hist(graph, hist, provenance)
        .map_err(|e| corrupt(name, e))?;
    Ok(Fixture::HistSnark(snark))
}

/// Loads and fully validates a catalog entry by name or alias. Results
/// (including Hists derived by enumeration) are cached per entry.
pub fn fixture(name: &str) -> Result<Fixture, RealizeError> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Fixture>>> = OnceLock::new();
    let entry = fixtures::catalog_entry(name)
        .ok_or_else(|| RealizeError::UnknownFixture(name.to_string()))?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(entry.name) {
        return Ok(hit.clone());
    }
    let loaded = load_entry(entry)?;
    cache
        .lock()
        .unwrap()
        .entry(entry.name)
        .or_insert_with(|| loaded.clone());
    Ok(loaded)
}

/// Loads a fixture as a Hist-snark, failing on the Hist-free entries.
pub fn fixture_snark(name: &str) -> Result<ConstructedHistSnark, RealizeError> {
    match fixture(name)? {
        Fixture::HistSnark(s) => Ok(s),
        Fixture::HistFree { name, .. } => Err(corrupt(&name, "fixture has no Hist")),
    }
}

/// Loads a fixture and selects its first enumerated Hist with the given
/// profile (for entries like B18 that carry several profiles); the
/// derived Hist is cached.
pub fn fixture_snark_with_profile(
    name: &str,
    profile: &OuterCycleProfile,
) -> Result<ConstructedHistSnark, RealizeError> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type ProfileCache = Mutex<HashMap<(String, Vec<usize>), ConstructedHistSnark>>;
    static CACHE: OnceLock<ProfileCache> = OnceLock::new();
    let base = fixture_snark(name)?;
    if base.profile == *profile {
        return Ok(base);
    }
    let key = (name.to_string(), profile.as_slice().to_vec());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    for h in enumerate_hists_with(&base.graph, usize::MAX, &HistOptions::default())? {
        let (_, prof) = outer_cycles(&base.graph, &h)?;
        if prof == *profile {
            let provenance = Provenance::fixture(name, &prof, &base.graph);
            let out = ConstructedHistSnark::from_graph_and_hist(base.graph, h, provenance)?;
            cache
                .lock()
                .unwrap()
                .entry(key)
                .or_insert_with(|| out.clone());
            return Ok(out);
        }
    }
    Err(corrupt(name, format!("no Hist with profile {profile}")))
}

pub fn fixture_names() -> Vec<&'static str> {
    fixtures::fixture_names()
}

/// Decides admissibility; the reason names the violated condition.
pub fn is_admissible(s: &ProfileSpec) -> (bool, String) {
    if s.is_empty() {
        return (false, "profile must be non-empty".into());
    }
    if let Some(&small) = s.as_slice().iter().find(|&&c| c < 5) {
        return (
            false,
            format!("element {small} violates the minimum length 5 (girth)"),
        );
    }
    if s.len() == 1 {
        let c = s.as_slice()[0];
        if c != 6 && c < 10 {
            return (
                false,
                format!("singleton {{{c}}} violates the rule: one outer cycle needs length 6 or at least 10"),
            );
        }
    }
    (true, "admissible".into())
}

/// Constructs a Hist-snark whose recomputed profile is exactly `s`.
pub fn realize(s: &ProfileSpec) -> Result<ConstructedHistSnark, RealizeError> {
    let (ok, reason) = is_admissible(s);
    if !ok {
        return Err(RealizeError::NotAdmissible { reason });
    }
    let mut memo: HashMap<Vec<usize>, ConstructedHistSnark> = HashMap::new();
    realize_inner(s, &mut memo)
}

fn realize_inner(
    s: &ProfileSpec,
    memo: &mut HashMap<Vec<usize>, ConstructedHistSnark>,
) -> Result<ConstructedHistSnark, RealizeError> {
    let key = s.as_slice().to_vec();
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    debug_assert!(is_admissible(s).0, "inner profiles stay admissible");
    let elems = s.as_slice();
    let out = if elems.len() == 1 {
        let k = elems[0];
        match k {
            6 => fixture_snark("P10")?,
            10 => fixture_snark("B18")?,
            11 => {
                let p10 = fixture_snark("P10")?;
                union_merge(&p10, 6, &p10, 6)?
            }
            12 => fixture_snark("L22")?,
            13 => fixture_snark("T(13)")?,
            _ => {
                let base = realize_inner(&OuterCycleProfile::new([k - 4]), memo)?;
                reduce_i(&base, k - 4)?
            }
        }
    } else if *elems.last().unwrap() > 8 {
        // Shrink the largest element by 4, then grow it back.
        let m = *elems.last().unwrap();
        let shrunk = s.removing(m).unwrap().adding(m - 4);
        let base = realize_inner(&shrunk, memo)?;
        reduce_i(&base, m - 4)?
    } else if elems.len() >= 4 {
        // Split off the two smallest elements; both parts stay
        // admissible (sizes 2 and >= 2, all elements >= 5).
        let pair = OuterCycleProfile::new([elems[0], elems[1]]);
        let rest = OuterCycleProfile::new(elems[2..].iter().copied());
        let a = realize_inner(&pair, memo)?;
        let b = realize_inner(&rest, memo)?;
        union_disjoint(&a, &b)?
    } else if elems.len() == 2 {
        match (elems[0], elems[1]) {
            (5, 6) => reduce_ii(&fixture_snark("P10")?)?,
            (6, 6) => reduce_iii(&fixture_snark("P10")?)?,
            (7, 8) => reduce_iv(&fixture_snark("P10")?, 6)?,
            (x, y) => fixture_snark(&format!("T({x},{y})"))?,
        }
    } else {
        // Triples with all elements in 5..=8.
        if s.contains(5) {
            let base = realize_inner(&s.removing(5).unwrap(), memo)?;
            reduce_ii(&base)?
        } else if s.contains(6) {
            let base = realize_inner(&s.removing(6).unwrap(), memo)?;
            reduce_iii(&base)?
        } else if s.contains(7) {
            // s = {7, y, z}: realize {y-2, z} and trade y-2 for y plus
            // the fresh 7.
            let rest = s.removing(7).unwrap();
            let (y, z) = (rest.as_slice()[0], rest.as_slice()[1]);
            let base = realize_inner(&OuterCycleProfile::new([y - 2, z]), memo)?;
            reduce_iv(&base, y - 2)?
        } else {
            fixture_snark("T(8,8,8)")?
        }
    };
    debug_assert_eq!(out.profile, *s);
    memo.insert(key, out.clone());
    Ok(out)
}

/// The construction plan of a realized snark.
pub fn plan_of(s: &ConstructedHistSnark) -> &RealizationPlan {
    &s.provenance
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScanOptions {
    pub certify: CertifyOptions,
    pub hist: HistOptions,
}

/// Per-graph scan record; absent fields mean the step did not run.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub n: Option<usize>,
    pub girth: Option<usize>,
    pub cyclically_4_edge_connected: Option<bool>,
    pub three_edge_colorable: Option<bool>,
    pub is_snark: Option<bool>,
    pub hist_found: Option<bool>,
    pub profile: Option<Vec<usize>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub graphs: usize,
    pub snarks: usize,
    pub snarks_with_hist: usize,
    pub snarks_without_hist: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    /// One JSON object per input line, in input order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_table(&self) -> String {
        let s = &self.summary;
        format!(
            "graphs scanned      {}\nparsed              {}\nsnarks              {}\nsnarks with Hist    {}\nsnarks without Hist {}\nerrors              {}\n",
            s.total, s.graphs, s.snarks, s.snarks_with_hist, s.snarks_without_hist, s.errors
        )
    }
}

/// Certifies and Hist-searches a batch of graphs, in parallel, with
/// results in input order. Parse failures are recorded per graph and
/// the scan continues.
pub fn scan_for_hists(graphs: Vec<Result<CubicGraph, String>>, opts: &ScanOptions) -> ScanReport {
    let records: Vec<ScanRecord> = graphs
        .into_par_iter()
        .enumerate()
        .map(|(index, parsed)| scan_one(index, parsed, opts))
        .collect();
    let summary = ScanSummary {
        total: records.len(),
        graphs: records.iter().filter(|r| r.n.is_some()).count(),
        snarks: records.iter().filter(|r| r.is_snark == Some(true)).count(),
        snarks_with_hist: records
            .iter()
            .filter(|r| r.is_snark == Some(true) && r.hist_found == Some(true))
            .count(),
        snarks_without_hist: records
            .iter()
            .filter(|r| r.is_snark == Some(true) && r.hist_found == Some(false))
            .count(),
        errors: records.iter().filter(|r| r.error.is_some()).count(),
    };
    ScanReport { records, summary }
}

fn scan_one(index: usize, parsed: Result<CubicGraph, String>, opts: &ScanOptions) -> ScanRecord {
    let mut record = ScanRecord {
        index,
        n: None,
        girth: None,
        cyclically_4_edge_connected: None,
        three_edge_colorable: None,
        is_snark: None,
        hist_found: None,
        profile: None,
        error: None,
    };
    let graph = match parsed {
        Ok(g) => g,
        Err(e) => {
            record.error = Some(e);
            return record;
        }
    };
    record.n = Some(graph.n());
    match certify_snark_with(&graph, &opts.certify) {
        Ok(cert) => {
            record.girth = Some(cert.girth);
            record.cyclically_4_edge_connected = Some(cert.cyclically_4_edge_connected);
            record.three_edge_colorable = Some(cert.three_edge_colorable);
            record.is_snark = Some(cert.is_snark);
        }
        Err(CertifyError::SizeCapExceeded { n, cap }) => {
            record.error = Some(format!("certification cap exceeded: {n} > {cap}"));
            return record;
        }
    }
    match find_hist_with(&graph, &opts.hist) {
        Ok(Some(hist)) => {
            record.hist_found = Some(true);
            if let Ok((_, profile)) = outer_cycles(&graph, &hist) {
                record.profile = Some(profile.as_slice().to_vec());
            }
        }
        Ok(None) => record.hist_found = Some(false),
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_graph6, Graph6Strictness};

    #[test]
    fn every_catalog_entry_loads_and_validates() {
        for name in fixture_names() {
            let f = fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            match f {
                Fixture::HistSnark(s) => {
                    let entry = fixtures::catalog_entry(name).unwrap();
                    assert_eq!(s.graph.n(), entry.expected_n, "{name}");
                    assert_eq!(
                        s.profile.as_slice(),
                        entry.expected_profile.unwrap(),
                        "{name}"
                    );
                }
                Fixture::HistFree { graph, .. } => {
                    assert_eq!(graph.n(), 38);
                }
            }
        }
    }

    #[test]
    fn the_shared_24_vertex_graph_carries_all_three_declared_profiles() {
        // T(5,8), T(6,7), and T(13) print the same adjacency list; the
        // catalog validates each declared Hist against it separately,
        // and exhaustive enumeration must find all three profiles.
        assert_eq!(fixtures::T58, fixtures::T67);
        assert_eq!(fixtures::T58, fixtures::T13);
        let g = parse_adjacency_text(fixtures::T58).unwrap();
        let mut profiles: Vec<Vec<usize>> = Vec::new();
        for h in enumerate_hists_with(&g, usize::MAX, &HistOptions::default()).unwrap() {
            let (_, prof) = outer_cycles(&g, &h).unwrap();
            profiles.push(prof.as_slice().to_vec());
        }
        for expected in [vec![5, 8], vec![6, 7], vec![13]] {
            assert!(
                profiles.contains(&expected),
                "missing profile {expected:?} among {} Hists",
                profiles.len()
            );
        }
    }

    #[test]
    fn fixture_lookup_accepts_aliases_and_rejects_unknown() {
        assert!(fixture("T888").is_ok());
        assert!(fixture("petersen").is_ok());
        assert!(matches!(
            fixture("T(9,9)"),
            Err(RealizeError::UnknownFixture(_))
        ));
    }

    #[test]
    fn corrupt_entries_abort_loudly() {
        // A genuine cycle whose complement is not a Hist must be
        // flagged, never silently repaired.
        let broken = FixtureData {
            name: "broken",
            aliases: &[],
            adjacency: fixtures::T55,
            outer_cycles: Some("[0,4,2,9,8]"),
            expected_profile: Some(&[5]),
            expected_n: 18,
        };
        assert!(matches!(
            load_entry(&broken),
            Err(RealizeError::FixtureCorrupt { .. })
        ));
        // A declaration with a non-adjacent pair fails at parse time.
        let non_adjacent = FixtureData {
            name: "non-adjacent",
            aliases: &[],
            adjacency: fixtures::T55,
            outer_cycles: Some("[0,4,5,1]"),
            expected_profile: Some(&[4]),
            expected_n: 18,
        };
        assert!(matches!(
            load_entry(&non_adjacent),
            Err(RealizeError::FixtureCorrupt { .. })
        ));
        // Wrong expected order is also fatal.
        let wrong_n = FixtureData {
            name: "wrong-n",
            aliases: &[],
            adjacency: fixtures::T55,
            outer_cycles: Some("[10,15,14,17,16] [2,7,3,8,9]"),
            expected_profile: Some(&[5, 5]),
            expected_n: 20,
        };
        assert!(matches!(
            load_entry(&wrong_n),
            Err(RealizeError::FixtureCorrupt { .. })
        ));
        // Wrong expected profile against a valid Hist.
        let wrong_profile = FixtureData {
            name: "wrong-profile",
            aliases: &[],
            adjacency: fixtures::T55,
            outer_cycles: Some("[10,15,14,17,16] [2,7,3,8,9]"),
            expected_profile: Some(&[4, 6]),
            expected_n: 18,
        };
        assert!(matches!(
            load_entry(&wrong_profile),
            Err(RealizeError::FixtureCorrupt { .. })
        ));
    }

    #[test]
    fn blanusa_carries_both_profiles() {
        let ten = fixture_snark("B18").unwrap();
        assert_eq!(ten.profile, [10].into());
        let five_five = fixture_snark_with_profile("B18", &[5, 5].into()).unwrap();
        assert_eq!(five_five.profile, [5, 5].into());
    }

    #[test]
    fn admissibility_rules() {
        assert!(is_admissible(&[6].into()).0);
        assert!(!is_admissible(&[9].into()).0);
        assert!(is_admissible(&[5, 5].into()).0);
        let (ok, reason) = is_admissible(&[4, 7].into());
        assert!(!ok);
        assert!(reason.contains("minimum length 5"));
        assert!(is_admissible(&[10].into()).0);
        assert!(!is_admissible(&[5].into()).0);
    }

    #[test]
    fn realize_singletons_and_vertex_count_identity() {
        for k in [6usize, 10, 11, 12, 13, 14] {
            let out = realize(&[k].into()).unwrap();
            assert_eq!(out.profile, OuterCycleProfile::new([k]));
            assert_eq!(out.graph.n(), 2 * (k - 1), "singleton {{{k}}}");
        }
    }

    #[test]
    fn realize_rejects_inadmissible() {
        assert!(matches!(
            realize(&[9].into()),
            Err(RealizeError::NotAdmissible { .. })
        ));
        assert!(matches!(
            realize(&[4, 7].into()),
            Err(RealizeError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn realize_uses_the_t888_fixture() {
        let out = realize(&[8, 8, 8].into()).unwrap();
        assert_eq!(out.graph.n(), 46);
        assert!(matches!(&out.provenance, Provenance::Fixture { name, .. } if name == "T(8,8,8)"));
    }

    #[test]
    fn realize_a_mixed_profile_and_recompute() {
        let s: ProfileSpec = [5, 6, 7, 8, 14].into();
        let out = realize(&s).unwrap();
        let (_, prof) = outer_cycles(&out.graph, &out.hist).unwrap();
        assert_eq!(prof, s);
        assert_eq!(out.graph.n(), 2 * (s.sum() - 1));
    }

    #[test]
    fn realize_is_deterministic_across_calls() {
        let s: ProfileSpec = [5, 7, 11].into();
        let a = realize(&s).unwrap();
        let b = realize(&s).unwrap();
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.hist, b.hist);
        assert_eq!(plan_of(&a), plan_of(&b));
    }

    #[test]
    fn scan_over_fixture_snarks_finds_hists_everywhere_but_x1_x2() {
        let graphs: Vec<Result<CubicGraph, String>> = fixture_names()
            .iter()
            .filter(|n| !n.starts_with('X'))
            .map(|n| match fixture(n).unwrap() {
                Fixture::HistSnark(s) => Ok(s.graph),
                Fixture::HistFree { graph, .. } => Ok(graph),
            })
            .collect();
        let report = scan_for_hists(graphs, &ScanOptions::default());
        assert_eq!(report.summary.errors, 0);
        assert_eq!(report.summary.snarks, report.summary.total);
        assert_eq!(report.summary.snarks_with_hist, report.summary.total);
        let jsonl = report.to_json_lines();
        assert_eq!(jsonl.lines().count(), report.summary.total);
    }

    #[test]
    fn scan_records_parse_errors_and_continues() {
        let graphs = vec![
            Err("bad line".to_string()),
            parse_graph6("C~", Graph6Strictness::Strict)
                .map(|mut v| v.remove(0))
                .map_err(|e| e.to_string()),
        ];
        let report = scan_for_hists(graphs, &ScanOptions::default());
        assert_eq!(report.summary.total, 2);
        assert_eq!(report.summary.errors, 1);
        assert_eq!(report.records[0].error.as_deref(), Some("bad line"));
        assert_eq!(report.records[1].is_snark, Some(false));
        assert_eq!(report.records[1].hist_found, Some(true));
    }

    #[test]
    fn empty_scan_is_empty() {
        let report = scan_for_hists(Vec::new(), &ScanOptions::default());
        assert_eq!(report.summary.total, 0);
        assert!(report.to_json_lines().is_empty());
    }
}
