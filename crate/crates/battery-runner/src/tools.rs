//! Simulated tools. Transitions are pure: the next state depends only on
//! the current state and the call arguments.

use std::collections::BTreeMap;

use serde::Serialize;

pub const KNOWN_TOOLS: [&str; 4] = ["calc", "kv_set", "kv_get", "kv_incr"];

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ToolState {
    pub kv: BTreeMap<String, String>,
    pub last_calc: Option<i64>,
}

impl ToolState {
    /// Applies one tool call; returns a short human-readable result line for
    /// the transcript.
    pub fn apply(
        &mut self,
        tool: &str,
        args: &BTreeMap<String, serde_json::Value>,
    ) -> Result<String, String> {
        let str_arg = |k: &str| -> Result<String, String> {
            args.get(k)
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .ok_or_else(|| format!("{tool} missing argument {k:?}"))
        };
        match tool {
            "calc" => {
                let expr = str_arg("expr")?;
                let value = eval_expr(&expr)?;
                self.last_calc = Some(value);
                Ok(format!("calc({expr}) = {value}"))
            }
            "kv_set" => {
                let key = str_arg("key")?;
                let value = str_arg("value")?;
                self.kv.insert(key.clone(), value.clone());
                Ok(format!("kv[{key}] = {value}"))
            }
            "kv_get" => {
                let key = str_arg("key")?;
                let value = self.kv.get(&key).cloned().unwrap_or_default();
                Ok(format!("kv[{key}] -> {value}"))
            }
            "kv_incr" => {
                let key = str_arg("key")?;
                let by: i64 = str_arg("by")?
                    .parse()
                    .map_err(|_| format!("kv_incr {key:?}: 'by' must be an integer"))?;
                let current: i64 = self
                    .kv
                    .get(&key)
                    .map(|v| v.parse().map_err(|_| format!("kv[{key}] is not an integer")))
                    .transpose()?
                    .unwrap_or(0);
                let next = current + by;
                self.kv.insert(key.clone(), next.to_string());
                Ok(format!("kv[{key}] = {next}"))
            }
            other => Err(format!("unknown tool {other:?}")),
        }
    }

    /// Substitutes `{{kv.<key>}}` and `{{calc}}` placeholders.
    pub fn render(&self, text: &str) -> Result<String, String> {
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        while let Some(start) = rest.find("{{") {
            out.push_str(&rest[..start]);
            let after = &rest[start + 2..];
            let end = after
                .find("}}")
                .ok_or_else(|| format!("unterminated placeholder in {text:?}"))?;
            let name = &after[..end];
            if name == "calc" {
                let v = self.last_calc.ok_or("{{calc}} used before any calc call")?;
                out.push_str(&v.to_string());
            } else if let Some(key) = name.strip_prefix("kv.") {
                let v = self
                    .kv
                    .get(key)
                    .ok_or_else(|| format!("{{{{kv.{key}}}}} used before kv_set"))?;
                out.push_str(v);
            } else {
                return Err(format!("unknown placeholder {{{{{name}}}}}"));
            }
            rest = &after[end + 2..];
        }
        out.push_str(rest);
        Ok(out)
    }
}

/// Static placeholder syntax check used at pack-validation time.
pub fn check_placeholders(text: &str) -> Result<(), String> {
    let mut rest = text;
    while let Some(start) = rest.find("{{") {
        let after = &rest[start + 2..];
        let end = after
            .find("}}")
            .ok_or_else(|| format!("unterminated placeholder in {text:?}"))?;
        let name = &after[..end];
        if name != "calc" && !name.starts_with("kv.") {
            return Err(format!("unknown placeholder {{{{{name}}}}}"));
        }
        rest = &after[end + 2..];
    }
    Ok(())
}

/// Integer expression evaluator: + - * / with precedence, parentheses, and
/// unary minus. Division must be exact so tool results stay integers.
fn eval_expr(expr: &str) -> Result<i64, String> {
    let tokens = tokenize(expr)?;
    let mut pos = 0;
    let value = parse_sum(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing input in expression {expr:?}"));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Num(i64),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn tokenize(expr: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let mut v: i64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((chars[i] as u8 - b'0') as i64))
                        .ok_or("number overflows")?;
                    i += 1;
                }
                out.push(Token::Num(v));
            }
            other => return Err(format!("unexpected character {other:?} in expression")),
        }
    }
    Ok(out)
}

fn parse_sum(tokens: &[Token], pos: &mut usize) -> Result<i64, String> {
    let mut value = parse_product(tokens, pos)?;
    while let Some(tok) = tokens.get(*pos) {
        match tok {
            Token::Plus => {
                *pos += 1;
                value += parse_product(tokens, pos)?;
            }
            Token::Minus => {
                *pos += 1;
                value -= parse_product(tokens, pos)?;
            }
            _ => break,
        }
    }
    Ok(value)
}

fn parse_product(tokens: &[Token], pos: &mut usize) -> Result<i64, String> {
    let mut value = parse_atom(tokens, pos)?;
    while let Some(tok) = tokens.get(*pos) {
        match tok {
            Token::Star => {
                *pos += 1;
                value *= parse_atom(tokens, pos)?;
            }
            Token::Slash => {
                *pos += 1;
                let divisor = parse_atom(tokens, pos)?;
                if divisor == 0 {
                    return Err("division by zero".to_string());
                }
                if value % divisor != 0 {
                    return Err(format!("{value}/{divisor} is not an integer"));
                }
                value /= divisor;
            }
            _ => break,
        }
    }
    Ok(value)
}

fn parse_atom(tokens: &[Token], pos: &mut usize) -> Result<i64, String> {
    match tokens.get(*pos) {
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(*v)
        }
        Some(Token::Minus) => {
            *pos += 1;
            Ok(-parse_atom(tokens, pos)?)
        }
        Some(Token::Open) => {
            *pos += 1;
            let value = parse_sum(tokens, pos)?;
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(value)
                }
                _ => Err("missing closing parenthesis".to_string()),
            }
        }
        other => Err(format!("unexpected token {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calculator_handles_precedence_and_parens() {
        assert_eq!(eval_expr("12+7").unwrap(), 19);
        assert_eq!(eval_expr("2+3*4").unwrap(), 14);
        assert_eq!(eval_expr("(2+3)*4").unwrap(), 20);
        assert_eq!(eval_expr("240/4").unwrap(), 60);
        assert_eq!(eval_expr("-5+8").unwrap(), 3);
        assert!(eval_expr("5/2").is_err());
        assert!(eval_expr("5/0").is_err());
        assert!(eval_expr("5+").is_err());
    }

    #[test]
    fn kv_transitions_are_pure_functions_of_state_and_args() {
        let mut a = ToolState::default();
        let mut args = BTreeMap::new();
        args.insert("key".to_string(), serde_json::json!("stock"));
        args.insert("value".to_string(), serde_json::json!("40"));
        a.apply("kv_set", &args).unwrap();
        let mut incr = BTreeMap::new();
        incr.insert("key".to_string(), serde_json::json!("stock"));
        incr.insert("by".to_string(), serde_json::json!("-12"));
        a.apply("kv_incr", &incr).unwrap();
        assert_eq!(a.kv["stock"], "28");

        let mut b = ToolState::default();
        b.apply("kv_set", &args).unwrap();
        b.apply("kv_incr", &incr).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn placeholders_render_from_state() {
        let mut s = ToolState::default();
        s.kv.insert("stock".to_string(), "40".to_string());
        s.last_calc = Some(19);
        assert_eq!(
            s.render("counter {{kv.stock}}, calc {{calc}}").unwrap(),
            "counter 40, calc 19"
        );
        assert!(s.render("{{kv.missing}}").is_err());
        assert!(s.render("{{oops}}").is_err());
        assert!(check_placeholders("{{nope}}").is_err());
    }
}
