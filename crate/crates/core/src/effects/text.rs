//! Textual forms of effects and effect values.
//!
//! Values: `x`, `{x,y}`, `{x:2,y:4}`, `none` / `some x`, `[{x},{y,z}]`,
//! `(m,x)`.

use super::{Effect, EffectValue, FiniteMonoid, OutputAlgebra, Semiring};
use crate::error::{Error, Result};

/// Name of an effect together with its output algebra, as used in file
/// headers and for `--effect`.
pub fn effect_spec(effect: &Effect, algebra: &OutputAlgebra) -> String {
    match (effect, algebra) {
        (Effect::Powerset, OutputAlgebra::And) => "powerset-and".into(),
        _ => effect.name(),
    }
}

/// Inverse of [`effect_spec`]. `outputs` sizes the free and partial
/// algebras; other algebras fix their own carrier.
pub fn parse_effect_spec(spec: &str, outputs: u32) -> Result<(Effect, OutputAlgebra)> {
    let spec = spec.trim();
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    let effect = match (head, arg) {
        ("identity", None) => Effect::Identity,
        ("powerset" | "powerset-and", None) => Effect::Powerset,
        ("maybe", None) => Effect::Maybe,
        ("upset", None) => Effect::Upset,
        ("semimodule", Some(p)) => {
            let p = p.strip_prefix("gf").unwrap_or(p);
            let p = p.parse().map_err(|_| Error::Config(format!("bad field order `{p}`")))?;
            Effect::Semimodule(Semiring::gf(p).map_err(|e| Error::Config(e.to_string()))?)
        }
        ("writer", Some(m)) => Effect::Writer(FiniteMonoid::parse(m).map_err(|e| Error::Config(e.to_string()))?),
        _ => return Err(Error::Config(format!("unknown effect `{spec}`"))),
    };
    let algebra = if head == "powerset-and" {
        OutputAlgebra::And
    } else {
        OutputAlgebra::default_for(&effect, outputs)
    };
    Ok((effect, algebra))
}

pub fn format_value<X>(v: &EffectValue<X>, show: impl Fn(&X) -> String) -> String {
    let list = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(",");
    match v {
        EffectValue::Identity(x) => show(x),
        EffectValue::Powerset(xs) => format!("{{{}}}", list(&mut xs.iter().map(&show))),
        EffectValue::Semimodule(xs) => {
            format!("{{{}}}", list(&mut xs.iter().map(|(x, c)| format!("{}:{c}", show(x)))))
        }
        EffectValue::Maybe(None) => "none".into(),
        EffectValue::Maybe(Some(x)) => format!("some {}", show(x)),
        EffectValue::Upset(cs) => format!(
            "[{}]",
            list(&mut cs.iter().map(|c| format!("{{{}}}", list(&mut c.iter().map(&show)))))
        ),
        EffectValue::Writer(m, x) => format!("({m},{})", show(x)),
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.s[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{c}` at offset {} in `{}`", self.pos, self.s))
        }
    }

    fn token(&mut self) -> std::result::Result<&'a str, String> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let end = rest
            .find(|c: char| c.is_whitespace() || "{}[](),:".contains(c))
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(format!("expected a name at offset {} in `{}`", self.pos, self.s));
        }
        self.pos += end;
        Ok(&rest[..end])
    }

    fn done(&mut self) -> std::result::Result<(), String> {
        self.skip_ws();
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(format!("trailing input `{}`", &self.s[self.pos..]))
        }
    }

    /// Comma-separated items up to `close`, the opener already consumed.
    fn items<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> std::result::Result<T, String>,
    ) -> std::result::Result<Vec<T>, String> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Parses a value of `effect`, reading labels with `label`. The result is
/// canonicalized.
pub fn parse_value<X: Ord + Clone>(
    effect: &Effect,
    text: &str,
    label: impl Fn(&str) -> std::result::Result<X, String>,
) -> std::result::Result<EffectValue<X>, String> {
    let mut c = Cursor { s: text, pos: 0 };
    let scalar = |t: &str, bound: u32| -> std::result::Result<u32, String> {
        t.parse::<u32>()
            .ok()
            .filter(|&x| x < bound)
            .ok_or_else(|| format!("`{t}` is not an element of a carrier of size {bound}"))
    };
    let v = match effect {
        Effect::Identity => EffectValue::Identity(label(c.token()?)?),
        Effect::Powerset => {
            c.expect('{')?;
            EffectValue::Powerset(c.items('}', |c| label(c.token()?))?)
        }
        Effect::Semimodule(s) => {
            c.expect('{')?;
            EffectValue::Semimodule(c.items('}', |c| {
                let x = label(c.token()?)?;
                c.expect(':')?;
                Ok((x, scalar(c.token()?, s.size())?))
            })?)
        }
        Effect::Maybe => match c.token()? {
            "none" => EffectValue::Maybe(None),
            "some" => EffectValue::Maybe(Some(label(c.token()?)?)),
            t => return Err(format!("expected `none` or `some`, found `{t}`")),
        },
        Effect::Upset => {
            c.expect('[')?;
            EffectValue::Upset(c.items(']', |c| {
                c.expect('{')?;
                c.items('}', |c| label(c.token()?))
            })?)
        }
        Effect::Writer(m) => {
            c.expect('(')?;
            let e = scalar(c.token()?, m.size())?;
            c.expect(',')?;
            let x = label(c.token()?)?;
            c.expect(')')?;
            EffectValue::Writer(e, x)
        }
    };
    c.done()?;
    if let EffectValue::Powerset(xs) = &v {
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate element in set".into());
        }
    }
    if let EffectValue::Semimodule(xs) = &v {
        let mut keys: Vec<&X> = xs.iter().map(|(x, _)| x).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate key in weighted combination".into());
        }
    }
    Ok(effect.canonicalize(v))
}
