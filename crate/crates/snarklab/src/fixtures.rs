//! Embedded fixture graphs: the named Hist-snarks T(5,5) through
//! T(8,8,8) with their declared outer cycles, the Hist-free snarks X1
//! and X2, plus the Petersen, Blanusa, and second Loupekine snarks.
//!
//! Adjacency texts use the parenthesized format of [`crate::formats`].
//! Several catalog names (T(5,8), T(6,7), T(13)) deliberately share one
//! 24-vertex graph and differ only in the declared Hist.

use crate::formats::{parse_adjacency_text, FormatError};
use crate::graph::CubicGraph;
use std::sync::OnceLock;

/// Static description of one catalog entry.
pub struct FixtureData {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub adjacency: &'static str,
    /// Outer cycles in cyclic vertex order, bracket format. None for
    /// entries whose Hist is derived by search (P10, B18, L22) and for
    /// the Hist-free snarks.
    pub outer_cycles: Option<&'static str>,
    /// Expected profile; None marks a Hist-free snark.
    pub expected_profile: Option<&'static [usize]>,
    pub expected_n: usize,
}

pub const T55: &str = "0(4,8,12)1(5,6,14)2(4,7,9)3(5,7,8)4(5)6(7,16)8(9)9(11)10(11,15,16)11(13)12(13,15)13(17)14(15,17)16(17)";
pub const T57: &str = "0(12,14,16)1(5,6,20)2(4,19,21)3(7,15,16)4(5,10)5(17)6(7,8)7(19)8(9,12)9(11,21)10(11,14)11(18)12(13)13(15,17)14(15)16(17)18(19,20)20(21)";
pub const T58: &str = "0(12,14,16)1(6,20,22)2(4,19,23)3(7,15,16)4(5,10)5(17,20)6(7,8)7(19)8(9,12)9(11,23)10(14,21)11(18,21)12(13)13(15,17)14(15)16(17)18(19,22)20(21)22(23)";
// The printed lists for T(6,7) and T(13) coincide with T(5,8): one
// 24-vertex snark carrying three different Hists.
pub const T67: &str = T58;
pub const T13: &str = T58;
pub const T68: &str = "0(3,10,22)1(5,13,16)2(4,7,9)3(5,7)4(5,10)6(7,8,24)8(9,12)9(15)10(11)11(13,20)12(17,25)13(25)14(19,21,22)15(18,21)16(17,24)17(19)18(19,23)20(21,23)22(23)24(25)";
pub const T77: &str = "0(12,14,16)1(6,20,22)2(4,19,23)3(7,15,16)4(5,10)5(20,24)6(7,8)7(19)8(9,12)9(11,23)10(14,25)11(18,21)12(13)13(15,17)14(15)16(17)17(24)18(19,22)20(21)21(25)22(23)24(25)";
pub const T88: &str = "0(8,10,14)1(5,9,11)2(7,16,18)3(13,19,22)4(5,7,28)5(13)6(7,11,29)8(9,29)9(12)10(11,28)12(13,17)14(15,23)15(17,18)16(17,20)18(21)19(23,26)20(21,27)21(24)22(25,27)23(25)24(25,26)26(27)28(29)";
pub const T888: &str = "0(3,21,24)1(2,6,24)2(15,25)3(4,25)4(7,26)5(6,8,26)6(27)7(18,27)8(11,28)9(10,14,28)10(23,29)11(12,29)12(15,30)13(14,16,30)14(31)15(31)16(19,32)17(18,22,32)18(33)19(20,33)20(23,34)21(22,34)22(35)23(35)24(36)25(36)26(37)27(37)28(38)29(38)30(39)31(39)32(40)33(40)34(41)35(41)36(42)37(42)38(43)39(43)40(44)41(44)42(45)43(45)44(45)";
pub const X1: &str = "0(8,12,18)1(5,9,13)2(4,14,20)3(5,7,8)4(5,12)6(7,10,13)7(14)8(15)9(19,22)10(18,24)11(26,34,36)12(16)13(16)14(17)15(17,19)16(17)18(21)19(21)20(25,36)21(27)22(30,34)23(25,28,31)24(26,37)25(35)26(32)27(29,31)28(29,30)29(32)30(33)31(33)32(33)34(35)35(37)36(37)";
pub const X2: &str = "0(8,12,18)1(5,9,13)2(4,14,20)3(5,7,8)4(5,12)6(7,10,13)7(14)8(15)9(19,22)10(18,24)11(26,34,36)12(16)13(16)14(17)15(17,19)16(17)18(21)19(21)20(28,34)21(27)22(26,37)23(27,30,32)24(25,36)25(30,35)26(33)27(29)28(31,32)29(31,33)30(31)32(33)34(35)35(37)36(37)";
pub const P10: &str = "0(1,4,5)1(2,6)2(3,7)3(4,8)4(9)5(7,8)6(8,9)7(9)";

/// The 18-vertex Blanusa snark used by the reductions: the dot product
/// of two Petersen graphs on the first canonical anchor tuple
/// (e1 = 0-1, e2 = 2-3, e3 = 0-1). Validated to carry Hists with
/// profiles {10} and {5,5}.
pub const B18: &str = "0(4,5,12)1(2,6,13)2(7,10)3(4,8,14)4(9)5(7,8)6(8,9)7(9)10(11,15)11(12,16)12(17)13(15,16)14(16,17)15(17)";
/// The 22-vertex second Loupekine snark in its rotation presentation:
/// an outer 12-cycle of leaves under a uniform depth-3 internal tree.
/// Validated as a snark with a Hist of profile {12}.
pub const L22: &str = "0(1,11,12)1(2,16)2(3,17)3(4,15)4(5,14)5(6,12)6(7,13)7(8,17)8(9,16)9(10,14)10(11,15)11(13)12(18)13(18)14(19)15(19)16(20)17(20)18(21)19(21)20(21)";

pub const CATALOG: &[FixtureData] = &[
    FixtureData {
        name: "P10",
        aliases: &["p10", "petersen", "Petersen"],
        adjacency: P10,
        outer_cycles: None,
        expected_profile: Some(&[6]),
        expected_n: 10,
    },
    FixtureData {
        name: "B18",
        aliases: &["b18", "blanusa", "Blanusa"],
        adjacency: B18,
        outer_cycles: None,
        expected_profile: Some(&[10]),
        expected_n: 18,
    },
    FixtureData {
        name: "L22",
        aliases: &["l22", "loupekine", "Loupekine"],
        adjacency: L22,
        outer_cycles: None,
        expected_profile: Some(&[12]),
        expected_n: 22,
    },
    FixtureData {
        name: "T(5,5)",
        aliases: &["T55", "t55"],
        adjacency: T55,
        outer_cycles: Some("[10,15,14,17,16] [2,7,3,8,9]"),
        expected_profile: Some(&[5, 5]),
        expected_n: 18,
    },
    FixtureData {
        name: "T(5,7)",
        aliases: &["T57", "t57"],
        adjacency: T57,
        outer_cycles: Some("[3,15,13,17,16] [10,4,2,21,20,18,11]"),
        expected_profile: Some(&[5, 7]),
        expected_n: 22,
    },
    FixtureData {
        name: "T(5,8)",
        aliases: &["T58", "t58"],
        adjacency: T58,
        outer_cycles: Some("[3,15,13,17,16] [10,4,2,23,22,18,11,21]"),
        expected_profile: Some(&[5, 8]),
        expected_n: 24,
    },
    FixtureData {
        name: "T(6,7)",
        aliases: &["T67", "t67"],
        adjacency: T67,
        outer_cycles: Some("[1,6,7,19,18,22] [4,5,17,13,15,14,10]"),
        expected_profile: Some(&[6, 7]),
        expected_n: 24,
    },
    FixtureData {
        name: "T(6,8)",
        aliases: &["T68", "t68"],
        adjacency: T68,
        outer_cycles: Some("[18,19,14,21,20,23] [1,5,4,2,7,6,24,16]"),
        expected_profile: Some(&[6, 8]),
        expected_n: 26,
    },
    FixtureData {
        name: "T(7,7)",
        aliases: &["T77", "t77"],
        adjacency: T77,
        outer_cycles: Some("[17,13,15,14,10,25,24] [1,6,7,19,2,23,22]"),
        expected_profile: Some(&[7, 7]),
        expected_n: 26,
    },
    FixtureData {
        name: "T(8,8)",
        aliases: &["T88", "t88"],
        adjacency: T88,
        outer_cycles: Some("[12,9,8,29,28,4,5,13] [14,15,18,21,24,26,19,23]"),
        expected_profile: Some(&[8, 8]),
        expected_n: 30,
    },
    FixtureData {
        name: "T(13)",
        aliases: &["T13", "t13"],
        adjacency: T13,
        outer_cycles: Some("[2,19,7,3,15,13,17,5,20,21,11,9,23]"),
        expected_profile: Some(&[13]),
        expected_n: 24,
    },
    FixtureData {
        name: "T(8,8,8)",
        aliases: &["T888", "t888"],
        adjacency: T888,
        outer_cycles: Some("[0,3,4,7,18,17,22,21] [1,2,15,12,11,8,5,6] [9,10,23,20,19,16,13,14]"),
        expected_profile: Some(&[8, 8, 8]),
        expected_n: 46,
    },
    FixtureData {
        name: "X1",
        aliases: &["x1"],
        adjacency: X1,
        outer_cycles: None,
        expected_profile: None,
        expected_n: 38,
    },
    FixtureData {
        name: "X2",
        aliases: &["x2"],
        adjacency: X2,
        outer_cycles: None,
        expected_profile: None,
        expected_n: 38,
    },
];

/// Looks up catalog metadata by name or alias.
pub fn catalog_entry(name: &str) -> Option<&'static FixtureData> {
    CATALOG
        .iter()
        .find(|f| f.name == name || f.aliases.contains(&name))
}

pub fn fixture_names() -> Vec<&'static str> {
    CATALOG.iter().map(|f| f.name).collect()
}

/// Parses a catalog adjacency text.
pub fn raw_graph(name: &str) -> Result<CubicGraph, FormatError> {
    let entry = catalog_entry(name).ok_or_else(|| FormatError::Syntax {
        at: 0,
        message: format!("unknown fixture {name}"),
    })?;
    parse_adjacency_text(entry.adjacency)
}

/// The embedded Blanusa snark, parsed once.
pub fn blanusa_graph() -> CubicGraph {
    static CACHE: OnceLock<CubicGraph> = OnceLock::new();
    CACHE
        .get_or_init(|| parse_adjacency_text(B18).expect("embedded Blanusa text is valid"))
        .clone()
}

/// The embedded second Loupekine snark, parsed once.
pub fn loupekine_graph() -> CubicGraph {
    static CACHE: OnceLock<CubicGraph> = OnceLock::new();
    CACHE
        .get_or_init(|| parse_adjacency_text(L22).expect("embedded Loupekine text is valid"))
        .clone()
}
