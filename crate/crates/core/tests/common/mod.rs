#![allow(dead_code)]

use mobi_core::exemplars::{make_example, ExampleId};
use mobi_core::model::{ImmStructure, MobiStructure, RingStructure, Structure, Value};

pub fn fixture(id: ExampleId) -> Structure {
    make_example(&id).unwrap_or_else(|e| panic!("fixture {id:?}: {e}"))
}

pub fn mobi(id: ExampleId) -> MobiStructure {
    fixture(id).as_mobi().expect("a mobi fixture").clone()
}

pub fn imm(id: ExampleId) -> ImmStructure {
    fixture(id).as_imm().expect("an IMM fixture").clone()
}

pub fn ring(id: ExampleId) -> RingStructure {
    fixture(id).as_ring().expect("a ring fixture").clone()
}

/// Element of a finite structure by label.
pub fn el(s: &Structure, label: &str) -> Value {
    Value::Label(s.carrier().position(label).unwrap_or_else(|| panic!("no label {label:?}")))
}

pub fn label_of(s: &Structure, v: &Value) -> String {
    s.carrier().render(v)
}

/// `a − ba + bc mod n`, computed on integers.
pub fn zn_p(n: i64, a: i64, b: i64, c: i64) -> i64 {
    (a - b * a + b * c).rem_euclid(n)
}

/// The three-element table written out independently: p(a,b,c) keyed by labels.
pub fn example6_oracle(a: &str, b: &str, c: &str) -> &'static str {
    let idx = |s: &str| ["0", "½", "1"].iter().position(|x| *x == s).unwrap();
    const T: [[[&str; 3]; 3]; 3] = [
        [["0", "0", "0"], ["0", "1", "½"], ["0", "½", "1"]],
        [["½", "½", "½"], ["1", "½", "0"], ["0", "½", "1"]],
        [["1", "1", "1"], ["½", "0", "1"], ["0", "½", "1"]],
    ];
    T[idx(a)][idx(b)][idx(c)]
}
