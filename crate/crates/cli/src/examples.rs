//! Bundled corpus and its regression assertions.
//!
//! Five triple files ship with the binary. Every number asserted here was
//! computed by the engine, cross-checked against an independent walk
//! enumerator, and in the hand-traceable cases verified by hand; the
//! assertions freeze them so any behavioral drift fails `verify-examples`.

use shiftlab_core::classdeg::{class_degree, verify_transition_block};
use shiftlab_core::degree::{degree, find_diamond, magic_search, verify_diamond};
use shiftlab_core::fibers::{class_restriction, periodic_classes};
use shiftlab_core::monoid::{Exactness, DEFAULT_CAP};
use shiftlab_core::structure::{
    composition_check, symbol_class_table, tau_permutation, PartitionVerdict,
};
use shiftlab_core::{BitSet, FactorTriple};

use crate::formats::TripleFile;

pub const CORPUS: [(&str, &str); 5] = [
    ("t1", include_str!("../corpus/t1.json")),
    ("t2", include_str!("../corpus/t2.json")),
    ("t3", include_str!("../corpus/t3.json")),
    ("t4", include_str!("../corpus/t4.json")),
    ("t5", include_str!("../corpus/t5.json")),
];

pub fn corpus_file(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|&(_, s)| s)
}

/// Parses a shipped corpus entry. The corpus is covered by its own tests,
/// so failure here means a corrupted build.
pub fn bundled(name: &str) -> (TripleFile, FactorTriple) {
    let text = corpus_file(name).expect("bundled corpus name");
    let file: TripleFile = serde_json::from_str(text).expect("bundled corpus parses");
    let triple = file.to_triple().expect("bundled corpus is valid");
    (file, triple)
}

#[derive(Clone, Debug)]
pub struct Assertion {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn check(
    out: &mut Vec<Assertion>,
    name: &'static str,
    f: impl FnOnce() -> Result<(), String>,
) {
    let (ok, detail) = match f() {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    out.push(Assertion { name, ok, detail });
}

fn eq<T: PartialEq + core::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn require(what: &str, cond: bool) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn ok<T>(r: Result<T, shiftlab_core::Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn names(t: &FactorTriple, set: &BitSet) -> Vec<String> {
    set.iter().map(|x| t.graph().name(x).to_string()).collect()
}

/// Class restriction sets at one coordinate, as sorted name lists.
fn restriction_names(t: &FactorTriple, word: &str, at: usize) -> Result<Vec<Vec<String>>, String> {
    let q = ok(t.parse_word(word))?;
    let cs = ok(periodic_classes(t, &q))?;
    let mut sets: Vec<Vec<String>> = class_restriction(t, &cs, at)
        .iter()
        .map(|s| names(t, s))
        .collect();
    sets.sort();
    Ok(sets)
}

fn svec(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn t1_assertions(t: &FactorTriple) -> Vec<Assertion> {
    let mut out = Vec::new();
    check(&mut out, "t1: the fixed point 0 has two classes joined one way", || {
        let q = ok(t.parse_word("0"))?;
        let cs = ok(periodic_classes(t, &q))?;
        eq("class count", cs.classes.len(), 2)?;
        eq("arrow count", cs.arrows.len(), 1)?;
        let sets: Vec<Vec<String>> = class_restriction(t, &cs, 0)
            .iter()
            .map(|s| names(t, s))
            .collect();
        let (from, to) = cs.arrows[0];
        eq("arrow source", sets[from].clone(), svec(&["a"]))?;
        eq("arrow target", sets[to].clone(), svec(&["b"]))
    });
    check(&mut out, "t1: exact class degree is refused on the reducible domain", || {
        match class_degree(t, DEFAULT_CAP) {
            Err(shiftlab_core::Error::NotIrreducible) => Ok(()),
            other => Err(format!("expected a reducibility error, got {other:?}")),
        }
    });
    out
}

pub fn t2_assertions(t: &FactorTriple) -> Vec<Assertion> {
    let mut out = Vec::new();
    check(&mut out, "t2: class degree 1 with a verifying depth-1 certificate", || {
        let rep = ok(class_degree(t, DEFAULT_CAP))?;
        eq("class degree", rep.value, 1)?;
        eq("search status", rep.status, Exactness::Exact)?;
        let c = &rep.certificate;
        eq("certificate depth", c.depth(), 1)?;
        require(
            "certificate verifies",
            ok(verify_transition_block(t, &c.word, c.coordinate, &c.symbols))?,
        )
    });
    check(&mut out, "t2: the fixed point 0 still splits into two classes", || {
        let q = ok(t.parse_word("0"))?;
        let cs = ok(periodic_classes(t, &q))?;
        eq("class count", cs.classes.len(), 2)
    });
    check(&mut out, "t2: smallest fiber width 2, strictly above the class degree", || {
        let m = ok(magic_search(t, DEFAULT_CAP))?;
        eq("minimal width", m.d_min, 2)?;
        eq("search status", m.status, Exactness::Exact)
    });
    check(&mut out, "t2: a diamond exists, so no finite point degree", || {
        match find_diamond(t) {
            Some(d) => require("diamond verifies", verify_diamond(t, &d)),
            None => Err("no diamond found".to_string()),
        }
    });
    out
}

pub fn t3_assertions(t: &FactorTriple) -> Vec<Assertion> {
    let mut out = Vec::new();
    check(&mut out, "t3: essential irreducible graph, 35 symbols, 50 edges, 8 letters", || {
        eq("symbols", t.graph().len(), 35)?;
        eq("edges", t.graph().edge_count(), 50)?;
        eq("letters", t.alphabet().len(), 8)?;
        require("irreducible", t.graph().is_irreducible())
    });
    check(&mut out, "t3: class degree 2, certified at the cut inside α'mα", || {
        let rep = ok(class_degree(t, DEFAULT_CAP))?;
        eq("class degree", rep.value, 2)?;
        eq("search status", rep.status, Exactness::Exact)?;
        let c = &rep.certificate;
        eq("certificate word", t.format_word(&c.word), "α'mα".to_string())?;
        eq("certificate coordinate", c.coordinate, 1)?;
        eq("certificate symbols", names(t, &c.symbols), svec(&["m1", "m2"]))?;
        require(
            "certificate verifies",
            ok(verify_transition_block(t, &c.word, c.coordinate, &c.symbols))?,
        )
    });
    check(&mut out, "t3: smallest fiber width 2, witnessed by the letter m alone", || {
        let m = ok(magic_search(t, DEFAULT_CAP))?;
        eq("minimal width", m.d_min, 2)?;
        eq("witness word", t.format_word(&m.witness_word), "m".to_string())?;
        eq("search status", m.status, Exactness::Exact)
    });
    check(&mut out, "t3: context mαaα' restricts the a-fiber to {1} and {3}", || {
        let sets = restriction_names(t, "mαaα'", 2)?;
        eq("sets", sets, vec![svec(&["1"]), svec(&["3"])])
    });
    check(&mut out, "t3: context mβaβ' restricts the a-fiber to {1,2} and {5}", || {
        let sets = restriction_names(t, "mβaβ'", 2)?;
        eq("sets", sets, vec![svec(&["1", "2"]), svec(&["5"])])
    });
    check(&mut out, "t3: context mγaγ' restricts the a-fiber to {2,3} and {6}", || {
        let sets = restriction_names(t, "mγaγ'", 2)?;
        eq("sets", sets, vec![svec(&["2", "3"]), svec(&["6"])])
    });
    check(&mut out, "t3: no 2-part partition of the a-fiber; 1 and 3 merge yet split", || {
        let letter = ok(t.label_index("a"))?;
        let table = ok(symbol_class_table(t, letter, 4, DEFAULT_CAP))?;
        eq("class degree", table.class_degree, 2)?;
        match &table.verdict {
            PartitionVerdict::NoPartition { conflict: Some(c) } => {
                eq("conflicting pair", (t.graph().name(c.first), t.graph().name(c.second)), ("1", "3"))?;
                require("merge evidence", !c.merged_in.is_empty())?;
                let row = &table.rows[c.separated_in];
                eq("splitting row class count", row.class_count, 2)
            }
            other => Err(format!("expected a conflict, got {other:?}")),
        }
    });
    check(&mut out, "t3: the m-fiber partitions into {m1} and {m2}", || {
        let letter = ok(t.label_index("m"))?;
        let table = ok(symbol_class_table(t, letter, 4, DEFAULT_CAP))?;
        match &table.verdict {
            PartitionVerdict::PartitionExists(parts) => {
                let mut got: Vec<Vec<String>> = parts.iter().map(|p| names(t, p)).collect();
                got.sort();
                eq("parts", got, vec![svec(&["m1"]), svec(&["m2"])])?;
                require("some context realizes the full fiber", table.full_fiber_row.is_some())
            }
            other => Err(format!("expected a partition, got {other:?}")),
        }
    });
    check(&mut out, "t3: the bridge a fixes both markers", || {
        let cert = ok(class_degree(t, DEFAULT_CAP))?.certificate;
        let v = ok(t.parse_word("a"))?;
        let tau = ok(tau_permutation(t, &cert, &v, DEFAULT_CAP))?;
        require("identity", tau.is_identity())
    });
    check(&mut out, "t3: the bridge aγ'mαa swaps the markers", || {
        let cert = ok(class_degree(t, DEFAULT_CAP))?.certificate;
        let v = ok(t.parse_word("aγ'mαa"))?;
        let tau = ok(tau_permutation(t, &cert, &v, DEFAULT_CAP))?;
        let got: Vec<(String, String)> = tau
            .map
            .iter()
            .map(|&(a, b)| (t.graph().name(a).to_string(), t.graph().name(b).to_string()))
            .collect();
        eq(
            "pairing",
            got,
            vec![
                ("m1".to_string(), "m2".to_string()),
                ("m2".to_string(), "m1".to_string()),
            ],
        )
    });
    out
}

/// Full shift on two letters labeled onto a single point; composing any
/// code with it collapses every class question to the trivial one.
pub fn collapse_code() -> FactorTriple {
    FactorTriple::new(
        "collapse",
        &["0", "1"],
        &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
        &[("0", "z"), ("1", "z")],
    )
    .expect("collapse code is valid")
}

pub fn t4_assertions(t: &FactorTriple) -> Vec<Assertion> {
    let mut out = Vec::new();
    check(&mut out, "t4: point degree 2 equals class degree 2", || {
        eq("point degree", ok(degree(t, DEFAULT_CAP))?, 2)?;
        eq("class degree", ok(class_degree(t, DEFAULT_CAP))?.value, 2)
    });
    check(&mut out, "t4: composing with the collapse code drops the class degree to 1", || {
        let second = collapse_code();
        let chk = ok(composition_check(t, &second, DEFAULT_CAP))?;
        eq(
            "(first, second, composed)",
            (chk.first, chk.second, chk.composed),
            (2, 1, 1),
        )?;
        require("product bound holds", chk.inequality_holds)?;
        require("drop is strict", chk.composed < chk.first * chk.second)?;
        require("collapse is onto", !chk.image_proper)
    });
    out
}

pub fn t5_assertions(t: &FactorTriple) -> Vec<Assertion> {
    let mut out = Vec::new();
    check(&mut out, "t5: the identity labeling has point and class degree 1", || {
        eq("point degree", ok(degree(t, DEFAULT_CAP))?, 1)?;
        eq("class degree", ok(class_degree(t, DEFAULT_CAP))?.value, 1)?;
        eq("minimal width", ok(magic_search(t, DEFAULT_CAP))?.d_min, 1)
    });
    out
}

/// Every bundled assertion, over the shipped corpus.
pub fn corpus_assertions() -> Vec<Assertion> {
    let mut out = Vec::new();
    out.extend(t1_assertions(&bundled("t1").1));
    out.extend(t2_assertions(&bundled("t2").1));
    out.extend(t3_assertions(&bundled("t3").1));
    out.extend(t4_assertions(&bundled("t4").1));
    out.extend(t5_assertions(&bundled("t5").1));
    out
}

/// The t3 assertion set against an arbitrary triple, treating construction
/// failure as a failed assertion. Drives the corpus mutation test.
pub fn t3_assertions_on(file: &TripleFile) -> Vec<Assertion> {
    match file.to_triple() {
        Ok(t) => t3_assertions(&t),
        Err(e) => vec![Assertion {
            name: "t3: the file parses to a valid triple",
            ok: false,
            detail: e.to_string(),
        }],
    }
}
