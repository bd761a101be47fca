//! Line-based `.fps` format.
//!
//! ```text
//! # comment
//! x1 tau 1/3 x1
//! x1 a 0.5 x3
//! state x9
//! ```
//!
//! Each transition line is `source action probability target`. A
//! `state NAME` line declares a state without transitions. States are
//! numbered by first mention; labels are numbered alphabetically.

use std::collections::HashMap;
use std::fmt::Write;

use super::{Fps, ProbTransition, DEFAULT_TAU_LABEL};
use crate::error::{ParseError, Result};
use crate::paths::{Action, Label, StateId};
use crate::rational::{format_fraction, parse_rational, Rational};

#[derive(Clone, Debug)]
pub struct FpsOptions {
    pub tau_label: String,
}

impl Default for FpsOptions {
    fn default() -> Self {
        FpsOptions {
            tau_label: DEFAULT_TAU_LABEL.to_string(),
        }
    }
}

/// Parses and validates; row-sum violations are reported as
/// [`Error::RowSum`].
pub fn parse_fps(text: &str, options: &FpsOptions) -> Result<Fps> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, StateId> = HashMap::new();
    let mut intern = |name: &str| -> StateId {
        if let Some(&s) = index.get(name) {
            return s;
        }
        names.push(name.to_string());
        index.insert(name.to_string(), names.len() - 1);
        names.len() - 1
    };
    let mut lines: Vec<(StateId, Option<String>, Rational, StateId)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            ["state", name] => {
                intern(name);
            }
            [src, action, prob, dst] => {
                let p = parse_rational(prob).ok_or_else(|| {
                    ParseError::new(line_no, format!("malformed probability `{prob}`"))
                })?;
                let s = intern(src);
                let t = intern(dst);
                let label = (*action != options.tau_label).then(|| action.to_string());
                lines.push((s, label, p, t));
            }
            _ => {
                return Err(ParseError::new(
                    line_no,
                    "expected `source action probability target` or `state NAME`",
                )
                .into())
            }
        }
    }
    let mut labels: Vec<String> = lines.iter().filter_map(|l| l.1.clone()).collect();
    labels.sort();
    labels.dedup();
    let transitions = lines
        .into_iter()
        .map(|(source, label, prob, target)| ProbTransition {
            source,
            action: match label {
                None => Action::Tau,
                Some(l) => Action::Visible(labels.binary_search(&l).expect("collected") as Label),
            },
            target,
            prob,
        })
        .collect();
    Ok(Fps::new(names, labels, transitions)?.with_tau_label(options.tau_label.clone()))
}

/// Writes transitions grouped by source. `state` lines are emitted only when
/// needed to reproduce the state numbering on re-reading.
pub fn write_fps(fps: &Fps) -> String {
    let mut out = String::new();
    let mut order: Vec<StateId> = Vec::new();
    let mut seen = vec![false; fps.num_states()];
    for t in fps.transitions() {
        for s in [t.source, t.target] {
            if !seen[s] {
                seen[s] = true;
                order.push(s);
            }
        }
    }
    let identity =
        order.len() == fps.num_states() && order.iter().enumerate().all(|(i, &s)| i == s);
    if !identity {
        for name in fps.state_names() {
            let _ = writeln!(out, "state {name}");
        }
    }
    for t in fps.transitions() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            fps.state_name(t.source),
            fps.action_name(t.action),
            format_fraction(&t.prob),
            fps.state_name(t.target)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fps::fixtures::{split_tau, tau_loop};
    use crate::rational::ratio;

    fn parse(text: &str) -> Result<Fps> {
        parse_fps(text, &FpsOptions::default())
    }

    #[test]
    fn tau_loop_left_system() {
        let fps = parse("x1 tau 1/3 x1\nx1 tau 1/3 x2\nx1 a 1/3 x3\nx2 b 1 x4\n").unwrap();
        assert_eq!(fps.num_states(), 4);
        assert_eq!(fps.tau_loop(0), ratio(1, 3));
        assert_eq!(fps.labels(), &["a", "b"]);
    }

    #[test]
    fn empty_and_stop() {
        let fps = parse("# nothing\nstate x\n").unwrap();
        assert_eq!(fps.num_states(), 1);
        assert!(fps.is_stop(0));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x a 1/2 y"), Err(Error::RowSum { .. })));
        assert!(matches!(parse("x a 1/0 y"), Err(Error::Parse(e)) if e.line == 1));
        assert!(matches!(parse("\nx a half y"), Err(Error::Parse(e)) if e.line == 2));
        assert!(matches!(parse("x a y"), Err(Error::Parse(_))));
    }

    #[test]
    fn decimals_and_comments() {
        let fps = parse("x a 0.25 y # quarter\nx b 0.75 z").unwrap();
        assert_eq!(
            fps.prob(0, fps.visible_action("b").unwrap(), 2),
            ratio(3, 4)
        );
    }

    #[test]
    fn custom_tau_label() {
        let fps = parse_fps(
            "x i 1 y",
            &FpsOptions {
                tau_label: "i".into(),
            },
        )
        .unwrap();
        assert_eq!(fps.prob(0, Action::Tau, 1), ratio(1, 1));
        assert!(fps.labels().is_empty());
    }

    #[test]
    fn round_trip() {
        for fps in [tau_loop(), split_tau(), parse("state z\nx a 1 y").unwrap()] {
            let again = parse(&write_fps(&fps)).unwrap();
            assert_eq!(again, fps);
        }
    }

    #[test]
    fn fixture_files_match() {
        assert_eq!(
            parse(include_str!("../../../../fixtures/tau_loop.fps")).unwrap(),
            tau_loop()
        );
        assert_eq!(
            parse(include_str!("../../../../fixtures/split_tau.fps")).unwrap(),
            split_tau()
        );
    }
}
