//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treeshift::alphabet::{Alphabet, Arity, Letter};
use treeshift::ca::{sft_cover, CellularAutomaton};
use treeshift::decide::{self, SoficInput};
use treeshift::error::Budget;
use treeshift::format::{parse_document, write_document, Document};
use treeshift::fta::{subset_fta, EmptinessMethod, FiniteTreeAutomaton, SubsetMode};
use treeshift::pattern::{enumerate_blocks, enumerate_full_patterns, Pattern};
use treeshift::rabin::{RabinAutomaton, StateId, TransitionBundle};
use treeshift::sft::{Scope, SftDescription};
use treeshift::tree::Word;

fn k2() -> Arity {
    Arity::new(2).unwrap()
}

fn alpha01() -> Alphabet {
    Alphabet::new(["0", "1"]).unwrap()
}

fn pattern(term: &str) -> Pattern {
    Pattern::parse_term(term, &alpha01(), k2()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn fixture_rabin(name: &str) -> RabinAutomaton {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    match parse_document(&text).unwrap() {
        Document::Rabin(a) => a,
        _ => panic!("{name} is not a rabin document"),
    }
}

fn fixture_sft(name: &str) -> SftDescription {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    match parse_document(&text).unwrap() {
        Document::Sft(x) => x,
        _ => panic!("{name} is not an sft document"),
    }
}

fn fixture_ca(name: &str) -> CellularAutomaton {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    match parse_document(&text).unwrap() {
        Document::Ca(t) => t,
        _ => panic!("{name} is not a ca document"),
    }
}

fn mono() -> RabinAutomaton {
    fixture_rabin("mono.rabin")
}

fn full() -> RabinAutomaton {
    fixture_rabin("full.rabin")
}

fn accepts(a: &RabinAutomaton, p: &Pattern) -> bool {
    a.accepts_pattern(p).unwrap().is_some()
}

/// A random automaton over two letters with at most three states, already
/// essentialized and nonempty.
fn random_essential(rng: &mut ChaCha8Rng) -> RabinAutomaton {
    loop {
        let n = rng.random_range(1..=3usize);
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let bundle_count = rng.random_range(n..=2 * n + 1);
        let bundles: Vec<TransitionBundle> = (0..bundle_count)
            .map(|_| {
                TransitionBundle::new(
                    StateId(rng.random_range(0..n)),
                    Letter(rng.random_range(0..2usize)),
                    vec![
                        StateId(rng.random_range(0..n)),
                        StateId(rng.random_range(0..n)),
                    ],
                )
            })
            .collect();
        let a = RabinAutomaton::new(k2(), alpha01(), names, bundles).unwrap();
        let essential = a.essentialize();
        if essential.state_count() > 0 {
            return essential;
        }
    }
}

/// A random finite-tree automaton with at most three base states; neither
/// essentiality nor reachability is imposed.
fn random_fta(rng: &mut ChaCha8Rng) -> FiniteTreeAutomaton {
    let n = rng.random_range(1..=3usize);
    let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let bundle_count = rng.random_range(0..=2 * n + 1);
    let bundles: Vec<TransitionBundle> = (0..bundle_count)
        .map(|_| {
            TransitionBundle::new(
                StateId(rng.random_range(0..n)),
                Letter(rng.random_range(0..2usize)),
                vec![
                    StateId(rng.random_range(0..n)),
                    StateId(rng.random_range(0..n)),
                ],
            )
        })
        .collect();
    let base = RabinAutomaton::new(k2(), alpha01(), names, bundles).unwrap();
    let initials: BTreeSet<StateId> = (0..n)
        .map(StateId)
        .filter(|_| rng.random_bool(0.5))
        .collect();
    let final_state = StateId(rng.random_range(0..n));
    FiniteTreeAutomaton::new(base, initials, final_state).unwrap()
}

/// Criterion 1: the monochromatic fixture has 4 patterns on Δ2 and 16 on
/// Δ3, agreeing with exhaustive enumeration against the forbidden-block
/// definition; the figure pattern 0(1,1) is accepted and 0(0,1) is not.
#[test]
fn criterion_01_monochromatic_pattern_counts() {
    let budget = Budget::default();
    let m = mono();
    let forbidden: Vec<Pattern> = ["0(0,1)", "0(1,0)", "1(0,1)", "1(1,0)"]
        .iter()
        .map(|t| pattern(t))
        .collect();
    for (depth, want) in [(2usize, 4usize), (3, 16)] {
        let blocks = enumerate_blocks(k2(), 2, depth, &budget).unwrap();
        // oracle: a block is in the shift iff no forbidden block occurs at
        // any position that fits inside it (the children of deeper vertices
        // never meet a constraint that could fail outside the block here,
        // because monochromatic violations are local to a vertex)
        let oracle: BTreeSet<Pattern> = blocks
            .iter()
            .filter(|p| {
                p.labels().all(|(w, _)| {
                    if w.len() + 2 > depth {
                        return true;
                    }
                    let local = p
                        .subtree_shift(w)
                        .and_then(|q| q.restrict_delta(2))
                        .unwrap();
                    !forbidden.contains(&local)
                })
            })
            .cloned()
            .collect();
        let accepted: BTreeSet<Pattern> = blocks
            .into_iter()
            .filter(|p| accepts(&m, p))
            .collect();
        assert_eq!(accepted.len(), want);
        assert_eq!(accepted, oracle);
    }
    assert!(accepts(&m, &pattern("0(1,1)")));
    assert!(!accepts(&m, &pattern("0(0,1)")));
    println!("criterion 1 (monochromatic fixture counts): pass");
}

/// Criterion 2: the fixture automaton and the canonical presentation of the
/// monochromatic SFT present the same shift, and the full shift differs
/// with a verifiable witness.
#[test]
fn criterion_02_presentation_equivalence() {
    let budget = Budget::default();
    let m = SoficInput::Automaton(mono());
    let canonical = fixture_sft("mono.sft").canonical_presentation(&budget).unwrap();
    let v = decide::equal_sofic(&m, &SoficInput::Automaton(canonical), &budget).unwrap();
    assert!(v.answer);

    let v = decide::equal_sofic(&m, &SoficInput::Automaton(full()), &budget).unwrap();
    assert!(!v.answer);
    let w = v.witness.expect("inequality carries a witness");
    assert!(accepts(&full(), &w) != accepts(&mono(), &w));
    println!("criterion 2 (presentation equivalence): pass");
}

/// Criterion 3: over 200 random essential automata with at most three
/// states, the subset construction preserves acceptance of every pattern of
/// height at most three and its output is co-deterministic.
#[test]
fn criterion_03_subset_construction_soundness() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5_1f7_0001);
    let patterns = enumerate_full_patterns(k2(), 2, 3, &budget).unwrap();
    for _ in 0..200 {
        let a = random_essential(&mut rng);
        let c = a.codeterminize(&budget).unwrap();
        assert!(c.classify().codeterministic);
        for p in &patterns {
            assert_eq!(accepts(&a, p), accepts(&c, p));
        }
    }
    println!("criterion 3 (subset construction soundness, 200 automata): pass");
}

/// Criterion 4: for the same corpus, every pattern of height at most three
/// is accepted by exactly one of the automaton and its complement
/// finite-tree automaton, which is co-complete, co-deterministic and has a
/// single initial state.
#[test]
fn criterion_04_complement_partition() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5_1f7_0002);
    let patterns = enumerate_full_patterns(k2(), 2, 3, &budget).unwrap();
    for _ in 0..200 {
        let a = random_essential(&mut rng);
        let c = subset_fta(&a, SubsetMode::Complement, &budget).unwrap();
        let cls = c.base().classify();
        assert!(cls.codeterministic);
        assert!(cls.cocomplete);
        assert_eq!(c.initials().len(), 1);
        for p in &patterns {
            let in_shift = accepts(&a, p);
            let in_complement = c.accepts(p).unwrap().is_some();
            assert!(in_shift ^ in_complement);
        }
    }
    println!("criterion 4 (complement partition, 200 automata): pass");
}

/// Criterion 5: fixpoint and naive height-bounded emptiness agree on 200
/// random finite-tree automata with at most three base states.
#[test]
fn criterion_05_emptiness_cross_check() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5_1f7_0003);
    for _ in 0..200 {
        let g = random_fta(&mut rng);
        let fast = g.is_empty(EmptinessMethod::Fixpoint, &budget).unwrap();
        let slow = g.is_empty(EmptinessMethod::Naive, &budget).unwrap();
        assert_eq!(fast, slow);
    }
    println!("criterion 5 (emptiness cross-check, 200 automata): pass");
}

/// Criterion 6: the image automaton of identity, constant-0 and
/// xor-of-children over the full shift and the monochromatic SFT accepts,
/// at every depth up to three, exactly the images of the admissible blocks.
#[test]
fn criterion_06_image_automaton_correctness() {
    let budget = Budget::default();
    let shifts = [
        SftDescription::full_shift(alpha01(), k2()),
        fixture_sft("mono.sft"),
    ];
    let cas = [
        fixture_ca("id.ca"),
        fixture_ca("const0.ca"),
        fixture_ca("xor.ca"),
    ];
    for x in &shifts {
        for tau in &cas {
            let a = tau.image_automaton(x, &budget).unwrap();
            for d in 1..=3usize {
                let mut want: Vec<Pattern> = x
                    .admissible_blocks(d + tau.memory() - 1, Scope::Global, &budget)
                    .unwrap()
                    .iter()
                    .map(|p| tau.apply_to_pattern(p).unwrap())
                    .collect();
                want.sort();
                want.dedup();
                let got: Vec<Pattern> = enumerate_blocks(k2(), 2, d, &budget)
                    .unwrap()
                    .into_iter()
                    .filter(|p| accepts(&a, p))
                    .collect();
                assert_eq!(got, want);
            }
        }
    }
    println!("criterion 6 (image automaton exhaustive check): pass");
}

/// Criterion 7: surjectivity verdicts for the three rules on the full
/// shift, with the xor answer cross-checked by brute-force preimage search
/// at every depth up to three.
#[test]
fn criterion_07_surjectivity_verdicts() {
    let budget = Budget::default();
    let full_sft = SoficInput::Sft(SftDescription::full_shift(alpha01(), k2()));
    let full_aut = SoficInput::Automaton(full());

    let v = decide::surjective(&fixture_ca("id.ca"), &full_sft, &full_aut, &budget).unwrap();
    assert!(v.answer);

    let v = decide::surjective(&fixture_ca("const0.ca"), &full_sft, &full_aut, &budget).unwrap();
    assert!(!v.answer);
    let w = v.witness.expect("failed surjectivity carries a witness");
    assert!(accepts(&full(), &w));
    assert!(w.labels().any(|(_, l)| l != Letter(0)));

    let xor = fixture_ca("xor.ca");
    let v = decide::surjective(&xor, &full_sft, &full_aut, &budget).unwrap();
    assert!(v.answer);
    // oracle: every pattern of depth ≤ 3 has a preimage among depth-(d+1) blocks
    for d in 1..=3usize {
        let mut images: BTreeSet<Pattern> = BTreeSet::new();
        for p in enumerate_blocks(k2(), 2, d + 1, &budget).unwrap() {
            images.insert(xor.apply_to_pattern(&p).unwrap());
        }
        for q in enumerate_blocks(k2(), 2, d, &budget).unwrap() {
            assert!(images.contains(&q));
        }
    }
    println!("criterion 7 (surjectivity verdicts with preimage oracle): pass");
}

/// Criterion 8: for each fixture automaton, the image automaton of its SFT
/// cover presents the same shift again.
#[test]
fn criterion_08_sft_cover_round_trip() {
    let budget = Budget::default();
    let single_loop = RabinAutomaton::new(
        k2(),
        alpha01(),
        vec!["u".into()],
        vec![TransitionBundle::new(
            StateId(0),
            Letter(1),
            vec![StateId(0), StateId(0)],
        )],
    )
    .unwrap();
    for a in [full(), mono(), single_loop] {
        let (cover, label_map) = sft_cover(&a, &budget).unwrap();
        let image = label_map.image_automaton(&cover, &budget).unwrap();
        let v = decide::equal_sofic(
            &SoficInput::Automaton(image),
            &SoficInput::Automaton(a),
            &budget,
        )
        .unwrap();
        assert!(v.answer);
    }
    println!("criterion 8 (sft cover round trip): pass");
}

/// Criterion 9: fullness of the full shift, non-fullness of the
/// monochromatic shift, fullness of the xor image of the full shift.
#[test]
fn criterion_09_fullness() {
    let budget = Budget::default();
    assert!(decide::is_full(&full(), &budget).unwrap().answer);
    assert!(!decide::is_full(&mono(), &budget).unwrap().answer);
    let image = fixture_ca("xor.ca")
        .image_automaton(&SftDescription::full_shift(alpha01(), k2()), &budget)
        .unwrap();
    assert!(decide::is_full(&image, &budget).unwrap().answer);
    println!("criterion 9 (fullness): pass");
}

/// Criterion 10: every subcommand produces byte-identical output across
/// runs and matches the committed golden files; emitted documents re-parse
/// and re-serialize identically.
#[test]
fn criterion_10_cli_golden() {
    let cases: &[(&str, &[&str])] = &[
        ("essentialize_mono", &["essentialize", "mono.rabin"]),
        ("classify_mono", &["classify", "mono.rabin"]),
        ("codet_mono", &["codet", "mono.rabin"]),
        ("join_mono_full", &["join", "mono.rabin", "full.rabin"]),
        ("complement_mono", &["complement", "mono.rabin"]),
        ("complement_fta", &["complement", "mono_complement.fta"]),
        ("empty_mono", &["empty", "mono.rabin"]),
        ("empty_fta", &["empty", "mono_complement.fta"]),
        ("full_mono", &["full", "mono.rabin"]),
        ("full_full", &["full", "full.rabin"]),
        ("accepts_p011", &["accepts", "mono.rabin", "p011.pattern"]),
        ("accepts_p001", &["accepts", "mono.rabin", "p001.pattern"]),
        ("accepts_fta", &["accepts", "mono_complement.fta", "p001.pattern"]),
        ("member_const0", &["member", "mono.rabin", "const0.moore"]),
        ("member_parity", &["member", "mono.rabin", "parity.moore"]),
        ("member_dir", &["member", "mono.rabin", "dir.moore"]),
        ("blocks_deadend_global", &["blocks", "deadend.sft", "2"]),
        (
            "blocks_deadend_local",
            &["blocks", "deadend.sft", "2", "--scope", "local"],
        ),
        ("present_mono", &["present", "mono.sft"]),
        ("cover_mono", &["cover", "mono.rabin"]),
        ("compose_xor_id", &["compose", "xor.ca", "id.ca"]),
        ("image_xor_full", &["image", "xor.ca", "full.sft"]),
        ("equal_mono_sft", &["equal", "mono.rabin", "mono.sft"]),
        ("equal_mono_full", &["equal", "mono.rabin", "full.rabin"]),
        ("subset_deadend_mono", &["subset", "deadend.sft", "mono.rabin"]),
        ("subset_full_mono", &["subset", "full.rabin", "mono.rabin"]),
        (
            "surjective_id",
            &["surjective", "id.ca", "full.sft", "full.rabin"],
        ),
        (
            "surjective_const0",
            &["surjective", "const0.ca", "full.sft", "full.rabin"],
        ),
        (
            "surjective_xor",
            &["surjective", "xor.ca", "full.sft", "full.rabin"],
        ),
        ("sample_mono", &["sample", "mono.rabin"]),
        ("sample_fta", &["sample", "mono_complement.fta"]),
    ];
    let bin = env!("CARGO_BIN_EXE_treeshift");
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in cases {
        let run = || {
            let output = Command::new(bin)
                .args(args.iter())
                .current_dir(&fixtures)
                .output()
                .expect("failed to run the binary");
            assert!(
                output.status.success(),
                "{name}: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            output.stdout
        };
        let first = run();
        let second = run();
        assert_eq!(first, second, "{name}: output differs between runs");
        let golden_path = golden_dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&golden_path, &first).unwrap();
        }
        let golden = std::fs::read(&golden_path)
            .unwrap_or_else(|_| panic!("{name}: missing golden file"));
        assert_eq!(first, golden, "{name}: output differs from golden file");
        // emitted documents must round-trip byte-identically
        let text = String::from_utf8(first).unwrap();
        for doc_text in text.split("\n\n").filter(|t| {
            ["rabin\n", "fta\n", "sft\n", "ca\n", "pattern\n", "moore\n"]
                .iter()
                .any(|k| t.starts_with(k))
        }) {
            let doc = parse_document(doc_text).unwrap();
            let mut canonical = write_document(&doc);
            if !doc_text.ends_with('\n') {
                canonical.truncate(canonical.len() - 1);
            }
            assert_eq!(canonical, doc_text, "{name}: document round trip");
        }
    }
    println!("criterion 10 (cli golden outputs, {} cases): pass", cases.len());
}
