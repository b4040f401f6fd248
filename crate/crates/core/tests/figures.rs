//! Golden wiring of the reference NOT/CNOT cascades.

use inbl::hyperspace::product_string_sample;
use inbl::verify::{figure_suite, figure_cascades, signal_equivalence_check};
use inbl::{compile_circuit, hardware_count, parse_circuit, BitString, Exec, Insertion, InsertionProgram, ReferenceSystem, Superposition};

fn prog(n: usize, items: &[(usize, u8, usize)]) -> InsertionProgram {
    InsertionProgram::from_insertions(n, items.iter().map(|&(b, v, t)| Insertion::new(b, v, t))).unwrap()
}

#[test]
fn every_figure_compiles_to_its_wiring() {
    for case in figure_cascades() {
        assert_eq!(compile_circuit(&case.circuit), case.expected, "{}", case.name);
    }
    let m: Vec<usize> = figure_cascades().iter().map(|c| hardware_count(&c.expected)).collect();
    assert_eq!(m, vec![2, 1, 2, 3, 3, 6]);
}

#[test]
fn interacting_pair_is_non_interacting_plus_one_correction() {
    // Start from the non-interacting wiring, then add NOT(bit 2) on W(0,1).
    let base = compile_circuit(&parse_circuit("CNOT 1 2\nCNOT 0 1", None).unwrap());
    let corrected = base.merge(&prog(3, &[(0, 1, 2)])).unwrap();
    assert_eq!(corrected, compile_circuit(&parse_circuit("CNOT 0 1\nCNOT 1 2", None).unwrap()));
}

#[test]
fn single_cnot_wire_signal() {
    let sys = ReferenceSystem::new(3, 17).unwrap();
    let p = compile_circuit(&parse_circuit("CNOT 1 2", None).unwrap());
    let host = inbl::WireId::one(1);
    for t in 0..500 {
        let expected = sys.sample_wire(host, t).unwrap()
            * sys.sample_wire(inbl::WireId::zero(2), t).unwrap()
            * sys.sample_wire(inbl::WireId::one(2), t).unwrap();
        assert_eq!(sys.effective_wire_sample(&p, host, t).unwrap(), expected);
        for w in [inbl::WireId::zero(0), inbl::WireId::zero(1), inbl::WireId::one(2)] {
            assert_eq!(sys.effective_wire_sample(&p, w, t).unwrap(), sys.sample_wire(w, t).unwrap());
        }
    }
    // Strings with control bit 1 come out with bit 2 flipped.
    let empty = InsertionProgram::empty(3);
    for (from, to) in [("010", "011"), ("011", "010"), ("110", "111"), ("111", "110"), ("100", "100")] {
        let (from, to) = (BitString::parse(from).unwrap(), BitString::parse(to).unwrap());
        for t in 0..200 {
            assert_eq!(
                product_string_sample(&sys, &p, &from, t).unwrap(),
                product_string_sample(&sys, &empty, &to, t).unwrap()
            );
        }
    }
}

#[test]
fn controlled_strings_under_single_cnot() {
    let sys = ReferenceSystem::new(3, 4).unwrap();
    let c = parse_circuit("CNOT 1 2", None).unwrap();
    let y = Superposition::parse("*1*", 3).unwrap();
    assert!(signal_equivalence_check(&sys, &c, &y, 1024, Exec::default()).unwrap().pass());
}

#[test]
fn figure_suite_report_serializes() {
    let r = figure_suite(Exec::default()).unwrap();
    assert!(r.pass);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["checks"][3]["program"]["M"], 3);
    assert_eq!(json["checks"][5]["program"]["M"], 6);
}
