use std::collections::BTreeMap;
use std::fmt::Write;
use std::fs;

use anyhow::{bail, Context, Result};
use pathbisim::fps::{self, Fps, Hat};
use pathbisim::lts::{self, Lts, Semantics};
use pathbisim::rational::format_fraction;
use pathbisim::valuation::audit_valuation;
use serde_json::{json, Value};

use crate::input::{default_output, format_of, load, require_aut, require_fps, System};
use crate::render::{block_names, blocks_line, language, member_set, signature_word};
use crate::{Command, SemanticsArg};

pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Check {
            common,
            semantics,
            pair,
        } => match load(common)? {
            System::Aut(lts) => check_aut(&lts, aut_semantics(*semantics)?, &pair[0], &pair[1]),
            System::Fps(fps) => {
                fps_semantics(*semantics)?;
                check_fps(&fps, &pair[0], &pair[1])
            }
        },
        Command::Partition { common, semantics } => match load(common)? {
            System::Aut(lts) => partition_aut(&lts, aut_semantics(*semantics)?),
            System::Fps(fps) => {
                fps_semantics(*semantics)?;
                partition_fps(&fps)
            }
        },
        Command::Minimize {
            common,
            semantics,
            output,
        } => {
            let format = format_of(common)?;
            let target = output
                .clone()
                .unwrap_or_else(|| default_output(&common.input, format));
            let (text, before, after, map) = match load(common)? {
                System::Aut(lts) => {
                    let sem = aut_semantics(*semantics)?;
                    let (q, part) = lts::minimize(&lts, sem);
                    let map = state_map(&part, |s| lts.state_name(s), |b| q.state_name(b));
                    (
                        lts::aut::write_aut(&q),
                        lts.num_states(),
                        q.num_states(),
                        map,
                    )
                }
                System::Fps(fps) => {
                    fps_semantics(*semantics)?;
                    let (q, part) = fps::minimize_fps(&fps)?;
                    let map = state_map(&part, |s| fps.state_name(s), |b| q.state_name(b));
                    (
                        fps::format::write_fps(&q),
                        fps.num_states(),
                        q.num_states(),
                        map,
                    )
                }
            };
            let mut map_path = target.clone().into_os_string();
            map_path.push(".map.json");
            let map_path = std::path::PathBuf::from(map_path);
            fs::write(&target, text).with_context(|| format!("writing `{}`", target.display()))?;
            let map_json = serde_json::to_string_pretty(&map)? + "\n";
            fs::write(&map_path, map_json)
                .with_context(|| format!("writing `{}`", map_path.display()))?;
            Ok(Output::ok(
                format!(
                    "{before} states -> {after} states\nwrote {}\nwrote {}\n",
                    target.display(),
                    map_path.display()
                ),
                json!({
                    "states_before": before,
                    "states_after": after,
                    "output": target.display().to_string(),
                    "map_file": map_path.display().to_string(),
                    "map": map,
                }),
            ))
        }
        Command::ProbReach {
            common,
            from,
            action,
            targets,
        } => {
            let fps = require_fps(load(common)?, "prob-reach")?;
            let x = fps.resolve(from)?;
            let hat = parse_hat(&fps, action, &common.tau_label)?;
            let ys = targets
                .iter()
                .map(|t| fps.resolve(t))
                .collect::<Result<Vec<_>, _>>()?;
            let p = format_fraction(&fps::prob_reach(&fps, x, hat, &ys));
            Ok(Output::ok(
                format!("{p}\n"),
                json!({
                    "from": from,
                    "language": language(&fps, hat),
                    "targets": targets,
                    "probability": p,
                }),
            ))
        }
        Command::AlphaDump {
            common,
            semantics,
            state,
            depth,
        } => {
            let lts = require_aut(load(common)?, "alpha-dump")?;
            alpha_dump(&lts, *semantics, state, *depth)
        }
        Command::Audit {
            common,
            seed,
            trials,
        } => {
            let fps = require_fps(load(common)?, "audit")?;
            if *trials == 0 {
                bail!("--trials must be at least 1");
            }
            let reports = audit_valuation(&fps, *seed, *trials);
            let mut text = String::new();
            for r in &reports {
                let verdict = if r.failures == 0 { "pass" } else { "FAIL" };
                let _ = writeln!(
                    text,
                    "{:<26} {:>6} trials {:>6} failures  {verdict}",
                    r.law, r.trials, r.failures
                );
                if let Some(w) = &r.witness {
                    let _ = writeln!(text, "  witness: {w}");
                }
            }
            let code = if reports.iter().all(|r| r.failures == 0) {
                0
            } else {
                1
            };
            Ok(Output {
                text,
                json: serde_json::to_value(&reports)?,
                code,
            })
        }
        Command::Paths {
            common,
            state,
            depth,
        } => match load(common)? {
            System::Aut(lts) => {
                let x = lts.resolve(state)?;
                let rows: Vec<String> = lts::executions(&lts, x, *depth)
                    .iter()
                    .map(|p| lts.format_path(p))
                    .collect();
                let text = rows.iter().map(|r| format!("{r}\n")).collect();
                Ok(Output::ok(
                    text,
                    json!(rows
                        .iter()
                        .map(|r| json!({ "path": r }))
                        .collect::<Vec<_>>()),
                ))
            }
            System::Fps(fps) => {
                let x = fps.resolve(state)?;
                let rows: Vec<(String, String)> = fps::executions(&fps, x, *depth)
                    .iter()
                    .map(|p| (fps.format_path(p), format_fraction(&fps::mu_p(&fps, p))))
                    .collect();
                let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
                let mut text = String::new();
                for (p, w) in &rows {
                    let _ = writeln!(text, "{p:<width$}  {w}");
                }
                let json = rows
                    .iter()
                    .map(|(p, w)| json!({ "path": p, "weight": w }))
                    .collect();
                Ok(Output::ok(text, Value::Array(json)))
            }
        },
    }
}

fn aut_semantics(s: Option<SemanticsArg>) -> Result<Semantics> {
    match s {
        Some(s) => Ok(s.into()),
        None => bail!("--semantics is required for .aut systems"),
    }
}

fn fps_semantics(s: Option<SemanticsArg>) -> Result<()> {
    match s {
        None | Some(SemanticsArg::Delay) => Ok(()),
        Some(other) => bail!("probabilistic systems support only delay semantics, not {other:?}"),
    }
}

fn parse_hat(fps: &Fps, action: &str, tau_label: &str) -> Result<Hat> {
    if ["eps", "ε", "epsilon", tau_label].contains(&action) {
        return Ok(Hat::Epsilon);
    }
    match fps.visible_action(action) {
        Some(a) => Ok(Hat::of(a)),
        None => bail!("unknown action `{action}`"),
    }
}

fn state_map<'a>(
    part: &pathbisim::Partition,
    original: impl Fn(usize) -> &'a str,
    quotient: impl Fn(usize) -> &'a str,
) -> BTreeMap<String, String> {
    (0..part.num_states())
        .map(|s| {
            (
                original(s).to_string(),
                quotient(part.block_of(s)).to_string(),
            )
        })
        .collect()
}

fn check_aut(lts: &Lts, sem: Semantics, x: &str, y: &str) -> Result<Output> {
    let (xi, yi) = (lts.resolve(x)?, lts.resolve(y)?);
    let rounds = lts::refine_rounds(lts, sem);
    let last = rounds.last().expect("non-empty");
    if last.same_block(xi, yi) {
        return Ok(Output::ok(
            "equivalent\n".into(),
            json!({ "semantics": sem.name(), "pair": [x, y], "equivalent": true }),
        ));
    }
    let k = rounds
        .iter()
        .rposition(|p| p.same_block(xi, yi))
        .expect("first round is trivial");
    let part = &rounds[k];
    let sx = lts::signature_automaton(lts, part, xi, sem);
    let sy = lts::signature_automaton(lts, part, yi, sem);
    let word = sx
        .distinguishing_word(&sy)
        .expect("states split in the next round");
    let (has, lacks) = if sx.accepts(&word) { (x, y) } else { (y, x) };
    let rendered = signature_word(lts, part, &word);
    Ok(Output {
        text: format!(
            "inequivalent\n{has} has the signature path {rendered} and {lacks} does not (refinement round {k})\n"
        ),
        json: json!({
            "semantics": sem.name(),
            "pair": [x, y],
            "equivalent": false,
            "round": k,
            "distinguishing": { "path": rendered, "present_at": has, "absent_at": lacks },
        }),
        code: 1,
    })
}

fn check_fps(fps: &Fps, x: &str, y: &str) -> Result<Output> {
    let (xi, yi) = (fps.resolve(x)?, fps.resolve(y)?);
    let rounds = fps::delay_refine_rounds(fps);
    if rounds.last().expect("non-empty").same_block(xi, yi) {
        return Ok(Output::ok(
            "equivalent\n".into(),
            json!({ "semantics": "delay", "pair": [x, y], "equivalent": true }),
        ));
    }
    let k = rounds
        .iter()
        .rposition(|p| p.same_block(xi, yi))
        .expect("first round is trivial");
    let part = &rounds[k];
    let sigs = fps::prob_signatures(fps, part);
    let (hat, block) = sigs[xi]
        .iter()
        .chain(sigs[yi].iter())
        .map(|(k, _)| *k)
        .find(|&(h, b)| sigs[xi].get(h, b) != sigs[yi].get(h, b))
        .expect("states split in the next round");
    let lang = language(fps, hat);
    let targets = member_set(fps, part.block(block));
    let (px, py) = (
        format_fraction(&sigs[xi].get(hat, block)),
        format_fraction(&sigs[yi].get(hat, block)),
    );
    Ok(Output {
        text: format!(
            "inequivalent\nP({x}, {lang}, {targets}) = {px} but P({y}, {lang}, {targets}) = {py} (refinement round {k})\n"
        ),
        json: json!({
            "semantics": "delay",
            "pair": [x, y],
            "equivalent": false,
            "round": k,
            "distinguishing": {
                "language": lang,
                "targets": part.block(block).iter().map(|&s| fps.state_name(s)).collect::<Vec<_>>(),
                "probabilities": [px, py],
            },
        }),
        code: 1,
    })
}

fn partition_aut(lts: &Lts, sem: Semantics) -> Result<Output> {
    let part = lts::refine(lts, sem);
    let blocks = block_names(&part, |s| lts.state_name(s));
    Ok(Output::ok(
        format!("{}\n", blocks_line(&blocks)),
        json!({ "semantics": sem.name(), "blocks": blocks }),
    ))
}

fn partition_fps(fps: &Fps) -> Result<Output> {
    let part = fps::delay_refine(fps);
    let blocks = block_names(&part, |s| fps.state_name(s));
    let sigs = fps::prob_signatures(fps, &part);
    let signatures: Vec<Value> = part
        .blocks()
        .iter()
        .map(|members| {
            sigs[members[0]]
                .iter()
                .map(|((hat, b), p)| {
                    json!({
                        "language": language(fps, *hat),
                        "target_block": b,
                        "probability": format_fraction(p),
                    })
                })
                .collect()
        })
        .collect();
    Ok(Output::ok(
        format!("{}\n", blocks_line(&blocks)),
        json!({ "semantics": "delay", "blocks": blocks, "signatures": signatures }),
    ))
}

fn alpha_dump(
    lts: &Lts,
    semantics: Option<SemanticsArg>,
    state: &str,
    depth: Option<usize>,
) -> Result<Output> {
    let x = lts.resolve(state)?;
    let sems: Vec<Semantics> = match semantics {
        Some(s) => vec![s.into()],
        None => Semantics::ALL.to_vec(),
    };
    let mut text = String::new();
    let mut sections = Vec::new();
    for sem in sems {
        let d =
            depth.unwrap_or_else(|| lts::default_depth(lts, lts::refine(lts, sem).num_blocks()));
        let mut rows: Vec<String> = lts::alpha(lts, x, sem, d)?
            .iter()
            .map(|c| lts.format_path(c.canonical()))
            .collect();
        rows.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        if semantics.is_none() {
            let _ = writeln!(text, "{}:", sem.name());
        }
        let indent = if semantics.is_none() { "  " } else { "" };
        for r in &rows {
            let _ = writeln!(text, "{indent}{r}");
        }
        sections.push(json!({ "semantics": sem.name(), "depth": d, "classes": rows }));
    }
    Ok(Output::ok(
        text,
        json!({ "state": state, "alpha": sections }),
    ))
}
