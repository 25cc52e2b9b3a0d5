//! Parser for the Young-function and weight expression grammar.
//!
//! ```text
//! expr  := name '(' [arg (',' arg)*] ')'
//! arg   := key '=' value | number '*' expr | expr
//! value := number | '[' [number (',' number)*] ']'
//! ```
//!
//! Printing a parsed value with `Display` gives back a parseable string.

use std::fmt;

use orlicz_core::{Weight, YoungFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {} in `{}`", self.message, self.position + 1, self.input)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Number(f64),
    List(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
enum Arg {
    Named(String, Value),
    Term(f64, Call),
}

#[derive(Clone, Debug, PartialEq)]
struct Call {
    name: String,
    args: Vec<Arg>,
    at: usize,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { input: self.src.to_string(), position: at, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error(self.pos, "expected a name"));
        }
        let s = self.rest()[..len].to_ascii_lowercase();
        self.pos += len;
        Ok(s)
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
            .unwrap_or(self.rest().len());
        let start = self.pos;
        let text = &self.rest()[..len];
        let v: f64 = text.parse().map_err(|_| self.error(start, format!("invalid number `{text}`")))?;
        self.pos += len;
        Ok(v)
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        if self.peek() == Some('[') {
            self.pos += 1;
            let mut xs = Vec::new();
            if self.peek() != Some(']') {
                loop {
                    xs.push(self.number()?);
                    if self.peek() == Some(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(']')?;
            Ok(Value::List(xs))
        } else {
            Ok(Value::Number(self.number()?))
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || matches!(c, '.' | '-' | '+') => {
                let a = self.number()?;
                self.expect('*')?;
                Ok(Arg::Term(a, self.call()?))
            }
            _ => {
                let save = self.pos;
                let name = self.ident()?;
                if self.peek() == Some('=') {
                    self.pos += 1;
                    Ok(Arg::Named(name, self.value()?))
                } else {
                    self.pos = save;
                    Ok(Arg::Term(1.0, self.call()?))
                }
            }
        }
    }

    fn call(&mut self) -> Result<Call, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        self.expect('(')?;
        let mut args = Vec::new();
        if self.peek() != Some(')') {
            loop {
                args.push(self.arg()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(')')?;
        Ok(Call { name, args, at })
    }

    fn parse(src: &'a str) -> Result<Call, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let call = p.call()?;
        if p.peek().is_some() {
            return Err(p.error(p.pos, "trailing input"));
        }
        Ok(call)
    }
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { input: self.src.to_string(), position: at, message: message.into() }
    }

    fn named<'c>(&self, call: &'c Call, allowed: &[&str]) -> Result<Vec<(&'c str, &'c Value)>, ParseError> {
        let mut out: Vec<(&str, &Value)> = Vec::new();
        for a in &call.args {
            match a {
                Arg::Named(k, v) => {
                    if !allowed.contains(&k.as_str()) {
                        return Err(self.error(call.at, format!("`{}` takes no parameter `{k}`", call.name)));
                    }
                    if out.iter().any(|(seen, _)| seen == k) {
                        return Err(self.error(call.at, format!("parameter `{k}` given twice")));
                    }
                    out.push((k, v));
                }
                Arg::Term(..) => {
                    return Err(self.error(call.at, format!("`{}` takes only key=value parameters", call.name)))
                }
            }
        }
        Ok(out)
    }

    fn number(&self, call: &Call, args: &[(&str, &Value)], key: &str, default: Option<f64>) -> Result<f64, ParseError> {
        match args.iter().find(|(k, _)| *k == key) {
            Some((_, Value::Number(x))) => Ok(*x),
            Some((_, Value::List(_))) => Err(self.error(call.at, format!("`{key}` must be a number"))),
            None => default.ok_or_else(|| self.error(call.at, format!("`{}` needs `{key}`", call.name))),
        }
    }

    fn list(&self, call: &Call, args: &[(&str, &Value)], key: &str) -> Result<Vec<f64>, ParseError> {
        match args.iter().find(|(k, _)| *k == key) {
            Some((_, Value::List(xs))) => Ok(xs.clone()),
            Some((_, Value::Number(x))) => Ok(vec![*x]),
            None => Err(self.error(call.at, format!("`{}` needs `{key}`", call.name))),
        }
    }

    fn terms<'c>(&self, call: &'c Call) -> Result<Vec<(f64, &'c Call)>, ParseError> {
        call.args
            .iter()
            .map(|a| match a {
                Arg::Term(k, c) => Ok((*k, c)),
                Arg::Named(..) => Err(self.error(call.at, format!("`{}` takes only sub-expressions", call.name))),
            })
            .collect()
    }

    fn check<T>(&self, call: &Call, r: orlicz_core::Result<T>) -> Result<T, ParseError> {
        r.map_err(|e| self.error(call.at, e.to_string()))
    }

    fn young(&self, call: &Call) -> Result<YoungFunction, ParseError> {
        match call.name.as_str() {
            "power" => {
                let a = self.named(call, &["p", "c"])?;
                let p = self.number(call, &a, "p", None)?;
                let c = self.number(call, &a, "c", Some(1.0))?;
                self.check(call, YoungFunction::power(p, c))
            }
            "exppower" => {
                let a = self.named(call, &["p"])?;
                let p = self.number(call, &a, "p", None)?;
                self.check(call, YoungFunction::exp_power(p))
            }
            "pwl" => {
                let a = self.named(call, &["t", "s"])?;
                let t = self.list(call, &a, "t")?;
                let s = self.list(call, &a, "s")?;
                self.check(call, YoungFunction::piecewise_linear(t, s))
            }
            "sum" => {
                let terms = self
                    .terms(call)?
                    .into_iter()
                    .map(|(k, c)| Ok((k, self.young(c)?)))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                self.check(call, YoungFunction::sum(terms))
            }
            other => Err(self.error(call.at, format!("unknown Young function `{other}`"))),
        }
    }

    fn weight(&self, call: &Call) -> Result<Weight, ParseError> {
        match call.name.as_str() {
            "const" => {
                let a = self.named(call, &["c"])?;
                self.check(call, Weight::constant(self.number(call, &a, "c", None)?))
            }
            "expnorm" => {
                let a = self.named(call, &["a"])?;
                self.check(call, Weight::exp_norm(self.number(call, &a, "a", None)?))
            }
            "polynorm" => {
                let a = self.named(call, &["a"])?;
                self.check(call, Weight::poly_norm(self.number(call, &a, "a", None)?))
            }
            "prod" => {
                let ws = self
                    .terms(call)?
                    .into_iter()
                    .map(|(k, c)| {
                        if k != 1.0 {
                            return Err(self.error(c.at, "weight factors take no coefficient"));
                        }
                        self.weight(c)
                    })
                    .collect::<Result<Vec<_>, ParseError>>()?;
                self.check(call, Weight::product(ws))
            }
            other => Err(self.error(call.at, format!("unknown weight `{other}`"))),
        }
    }
}

pub fn parse_young(src: &str) -> Result<YoungFunction, ParseError> {
    let call = Parser::parse(src)?;
    Ctx { src }.young(&call)
}

pub fn parse_weight(src: &str) -> Result<Weight, ParseError> {
    let call = Parser::parse(src)?;
    Ctx { src }.weight(&call)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn young_round_trip() {
        for s in [
            "power(p=2,c=1)",
            "power(p=1.5,c=0.25)",
            "exppower(p=1)",
            "sum(2*power(p=2,c=1),0.5*exppower(p=1))",
            "pwl(t=[0,1,2.5],s=[0,1])",
            "sum(1*sum(3*power(p=1,c=1)),1*exppower(p=2))",
        ] {
            let phi = parse_young(s).unwrap();
            assert_eq!(phi.to_string(), s);
            assert_eq!(parse_young(&phi.to_string()).unwrap(), phi);
        }
        assert_eq!(parse_young(" power( p = 3 ) ").unwrap(), YoungFunction::power(3.0, 1.0).unwrap());
        assert_eq!(
            parse_young("sum(power(p=2),exppower(p=1))").unwrap(),
            YoungFunction::sum(vec![
                (1.0, YoungFunction::power(2.0, 1.0).unwrap()),
                (1.0, YoungFunction::exp_power(1.0).unwrap())
            ])
            .unwrap()
        );
    }

    #[test]
    fn weight_round_trip() {
        for s in ["const(c=2)", "expnorm(a=1)", "polynorm(a=0.5)", "prod(expnorm(a=1),polynorm(a=2))"] {
            let w = parse_weight(s).unwrap();
            assert_eq!(w.to_string(), s);
            assert_eq!(parse_weight(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "power", "power(p=2", "power(q=2)", "power(p=0.5)", "power(p=2,p=3)", "foo(p=1)", "power(p=2) x"] {
            assert!(parse_young(s).is_err(), "{s}");
        }
        for s in ["const(c=-1)", "expnorm()", "prod(2*const(c=1))", "power(p=2)"] {
            assert!(parse_weight(s).is_err(), "{s}");
        }
        let e = parse_young("power(p=abc)").unwrap_err();
        assert_eq!(e.position, 8);
    }
}
