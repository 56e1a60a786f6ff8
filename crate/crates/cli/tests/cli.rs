use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const DFA: &str = "effect identity
alphabet a
states q0,q1,q2
init q0
trans q0 a q1
trans q1 a q2
trans q2 a q2
out q0 1
out q1 0
out q2 1
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lstar-t")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn learn_prints_stats_and_the_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "dfa.aut", DFA);
    let out = stdout(&run(&["learn", "--target", &target]));
    let (stats, aut) = out.split_at(out.find("effect").unwrap());
    assert_eq!(stats, "mq 6\neq 2\nrounds 2\nprefixes 4\nsuffixes 2\nstates 3\nlongest_counterexample 3\n");
    let learned = lstar_t::automata::format::parse(aut).unwrap();
    assert_eq!(learned.num_states(), 3);
}

#[test]
fn learned_file_is_accepted_as_a_target() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "dfa.aut", DFA);
    let learned = dir.path().join("learned.aut");
    stdout(&run(&["learn", "--target", &target, "--ce", "rs", "--out", learned.to_str().unwrap()]));
    let text = fs::read_to_string(&learned).unwrap();
    let again = dir.path().join("again.aut");
    stdout(&run(&["learn", "--target", learned.to_str().unwrap(), "--ce", "rs", "--out", again.to_str().unwrap()]));
    assert_eq!(fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn trace_shows_tables() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "dfa.aut", DFA);
    let out = stdout(&run(&["learn", "--target", &target, "--trace"]));
    assert!(out.starts_with("# round 0 initial\n  | ε\n--+--\nε | 1\n--+--\na | 0\n"), "{out}");
    assert!(out.contains("# round 1 counterexample aaa\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "dfa.aut", DFA);
    let broken = write(dir.path(), "broken.aut", "effect identity\nalphabet a\nstates q\ninit r\n");
    assert_eq!(run(&["learn", "--target", &broken]).status.code(), Some(2));
    assert_eq!(run(&["learn", "--target", &target, "--consistency", "none"]).status.code(), Some(3));
    assert_eq!(run(&["learn", "--target", &target, "--teacher", "oracle"]).status.code(), Some(3));
    assert_eq!(run(&["learn", "--target", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn tabakov_vardi_density() {
    for (n, per_symbol) in [(4, 5), (10, 13), (2, 3)] {
        let n_arg = n.to_string();
        let text = stdout(&run(&["generate", "--kind", "tv-nfa", "--n", &n_arg, "--k", "2", "--seed", "7"]));
        let aut = lstar_t::automata::format::parse(&text).unwrap();
        assert_eq!(aut.num_states(), n);
        for a in ["a", "b"] {
            let count: usize = text
                .lines()
                .filter(|l| l.starts_with("trans ") && l.split(' ').nth(2) == Some(a))
                .map(|l| l.split(' ').nth(3).unwrap().trim_matches(|c| c == '{' || c == '}').split(',').filter(|s| !s.is_empty()).count())
                .sum();
            assert_eq!(count, per_symbol, "n = {n}, symbol {a}");
        }
    }
}

#[test]
fn generated_targets_round_trip_and_learn() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, ce) in [("moore", "mp"), ("dfa", "rs"), ("wfa", "rs"), ("tv-nfa", "mp")] {
        let text = stdout(&run(&["generate", "--kind", kind, "--n", "3", "--k", "2", "--field", "3", "--seed", "1"]));
        let aut = lstar_t::automata::format::parse(&text).unwrap();
        assert_eq!(lstar_t::automata::format::serialize(&aut), text);
        let target = write(dir.path(), &format!("{kind}.aut"), &text);
        let out = stdout(&run(&["learn", "--target", &target, "--ce", ce]));
        assert!(out.starts_with("mq "), "{out}");
    }
    // the same seed gives the same file
    let a = stdout(&run(&["generate", "--kind", "wfa", "--seed", "5"]));
    let b = stdout(&run(&["generate", "--kind", "wfa", "--seed", "5"]));
    assert_eq!(a, b);
}

#[test]
fn bench_is_reproducible_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for name in ["one", "two"] {
        let out = dir.path().join(name);
        let printed = stdout(&run(&[
            "bench", "--suite", "nfa-table2", "--sizes", "2..3", "--iters", "3", "--seed", "9", "--no-timing", "--out",
            out.to_str().unwrap(),
        ]));
        assert!(!printed.is_empty());
        csvs.push((printed, fs::read_to_string(out.join("rows.csv")).unwrap(), fs::read_to_string(out.join("aggregate.csv")).unwrap()));
    }
    assert_eq!(csvs[0], csvs[1]);
    assert_eq!(run(&["bench", "--suite", "nope", "--sizes", "2"]).status.code(), Some(3));
}
