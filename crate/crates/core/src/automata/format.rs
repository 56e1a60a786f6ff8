//! Line-oriented text format for automata.
//!
//! ```text
//! effect powerset
//! alphabet a
//! states q0,q1
//! init {q0}
//! trans q0 a {q1}
//! trans q1 a {q0,q1}
//! out q0 1
//! out q1 0
//! ```
//!
//! Identity and maybe automata may add `outputs N` to size their output
//! carrier (default 2). Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write;

use super::{DetState, SuccinctAutomaton};
use crate::effects::text::{effect_spec, format_value, parse_effect_spec, parse_value};
use crate::effects::{Effect, OutputAlgebra, Out};
use crate::error::{Error, Result};
use crate::word::Alphabet;

pub fn serialize(aut: &SuccinctAutomaton) -> String {
    let names = aut.state_names();
    let show = |s: &usize| names[*s].clone();
    let mut o = String::new();
    writeln!(o, "effect {}", effect_spec(aut.effect(), aut.algebra())).unwrap();
    match aut.algebra() {
        OutputAlgebra::Free(n) | OutputAlgebra::Partial(n) if *n != 2 => writeln!(o, "outputs {n}").unwrap(),
        _ => {}
    }
    writeln!(o, "alphabet {}", aut.alphabet()).unwrap();
    writeln!(o, "states {}", names.join(",")).unwrap();
    writeln!(o, "init {}", format_value(aut.init(), show)).unwrap();
    for s in 0..aut.num_states() {
        for a in aut.alphabet().symbols() {
            let v = format_value(aut.delta(s, a), show);
            writeln!(o, "trans {} {} {v}", names[s], aut.alphabet().name(a)).unwrap();
        }
    }
    for s in 0..aut.num_states() {
        writeln!(o, "out {} {}", names[s], aut.out(s)).unwrap();
    }
    o
}

pub fn parse(text: &str) -> Result<SuccinctAutomaton> {
    let mut effect_line: Option<(usize, String)> = None;
    let mut outputs: u32 = 2;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<Vec<String>> = None;
    let mut init_line: Option<(usize, String)> = None;
    let mut trans_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut out_lines: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let list = || rest.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>();
        match kw {
            "effect" => effect_line = Some((ln, rest.to_string())),
            "outputs" => outputs = rest.parse().map_err(|_| Error::parse(ln, format!("bad output count `{rest}`")))?,
            "alphabet" => alphabet = Some(Alphabet::new(list()).map_err(|e| Error::parse(ln, e.to_string()))?),
            "states" => states = Some(if rest.is_empty() { Vec::new() } else { list() }),
            "init" => init_line = Some((ln, rest.to_string())),
            "trans" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(q), Some(a), Some(v)) => trans_lines.push((ln, q.into(), a.into(), v.trim().into())),
                    _ => return Err(Error::parse(ln, "expected `trans <state> <symbol> <value>`")),
                }
            }
            "out" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [q, o] => out_lines.push((ln, q.into(), o.into())),
                _ => return Err(Error::parse(ln, "expected `out <state> <output>`")),
            },
            _ => return Err(Error::parse(ln, format!("unknown keyword `{kw}`"))),
        }
    }

    let (eln, espec) = effect_line.ok_or_else(|| Error::parse(0, "missing `effect` line"))?;
    let (effect, algebra) = parse_effect_spec(&espec, outputs).map_err(|e| Error::parse(eln, e.to_string()))?;
    let alphabet = alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet` line"))?;
    let states = states.ok_or_else(|| Error::parse(0, "missing `states` line"))?;
    let index: HashMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let label = |s: &str| index.get(s).copied().ok_or_else(|| format!("unknown state `{s}`"));
    let value = |ln: usize, text: &str| -> Result<DetState> {
        parse_value(&effect, text, label).map_err(|m| Error::parse(ln, m))
    };

    let (iln, itext) = init_line.ok_or_else(|| Error::parse(0, "missing `init` line"))?;
    let init = value(iln, &itext)?;
    let n = states.len();
    let k = alphabet.len();
    let mut delta: Vec<Vec<Option<DetState>>> = vec![vec![None; k]; n];
    for (ln, q, a, v) in &trans_lines {
        let s = label(q).map_err(|m| Error::parse(*ln, m))?;
        let sym = alphabet.index_of(a).ok_or_else(|| Error::parse(*ln, format!("unknown symbol `{a}`")))?;
        if delta[s][sym].is_some() {
            return Err(Error::parse(*ln, format!("duplicate transition for {q} on {a}")));
        }
        delta[s][sym] = Some(value(*ln, v)?);
    }
    let mut out: Vec<Option<Out>> = vec![None; n];
    for (ln, q, o) in &out_lines {
        let s = label(q).map_err(|m| Error::parse(*ln, m))?;
        let o: Out = o.parse().map_err(|_| Error::parse(*ln, format!("bad output `{o}`")))?;
        if out[s].replace(o).is_some() {
            return Err(Error::parse(*ln, format!("duplicate output for {q}")));
        }
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(s, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, v)| {
                    v.ok_or_else(|| Error::parse(0, format!("missing transition for {} on {}", states[s], alphabet.name(a))))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let out = out
        .into_iter()
        .enumerate()
        .map(|(s, o)| o.ok_or_else(|| Error::parse(0, format!("missing output for {}", states[s]))))
        .collect::<Result<Vec<_>>>()?;
    if matches!(effect, Effect::Identity | Effect::Maybe) && out.iter().any(|&o| o >= outputs) {
        return Err(Error::parse(0, format!("outputs exceed the declared {outputs}; add an `outputs` line")));
    }
    SuccinctAutomaton::new(effect, algebra, alphabet, states, init, delta, out).map_err(|e| match e {
        Error::Invalid(m) => Error::parse(0, m),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::examples::{dfa_ml, nfa_ml};

    #[test]
    fn round_trip_examples() {
        for a in [dfa_ml(), nfa_ml()] {
            let text = serialize(&a);
            let b = parse(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(serialize(&b), text);
        }
    }

    #[test]
    fn nfa_text() {
        let t = serialize(&nfa_ml());
        assert_eq!(
            t,
            "effect powerset\nalphabet a\nstates q0,q1\ninit {q0}\ntrans q0 a {q1}\ntrans q1 a {q0,q1}\nout q0 1\nout q1 0\n"
        );
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "effect powerset\nalphabet a\nstates q0\ninit {q9}\n";
        match parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("effect nope\n"), Err(Error::Parse { line: 1, .. })));
        let missing = "effect identity\nalphabet a\nstates q0\ninit q0\nout q0 1\n";
        assert!(matches!(parse(missing), Err(Error::Parse { .. })));
    }
}
