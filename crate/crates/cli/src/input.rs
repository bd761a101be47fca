use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pathbisim::fps::format::{parse_fps, FpsOptions};
use pathbisim::fps::Fps;
use pathbisim::lts::aut::{parse_aut, AutOptions};
use pathbisim::lts::Lts;

use crate::{Common, InputFormat};

pub enum System {
    Aut(Lts),
    Fps(Fps),
}

pub fn format_of(common: &Common) -> Result<InputFormat> {
    if let Some(f) = common.input_format {
        return Ok(f);
    }
    match common.input.extension().and_then(|e| e.to_str()) {
        Some("aut") => Ok(InputFormat::Aut),
        Some("fps") => Ok(InputFormat::Fps),
        _ => bail!(
            "cannot infer the format of `{}`; pass --input-format aut|fps",
            common.input.display()
        ),
    }
}

pub fn load(common: &Common) -> Result<System> {
    let format = format_of(common)?;
    let text = fs::read_to_string(&common.input)
        .with_context(|| format!("reading `{}`", common.input.display()))?;
    let origin = common.input.display();
    Ok(match format {
        InputFormat::Aut => {
            let options = AutOptions {
                tau_label: common.tau_label.clone(),
            };
            System::Aut(parse_aut(&text, &options).with_context(|| format!("in `{origin}`"))?)
        }
        InputFormat::Fps => {
            let options = FpsOptions {
                tau_label: common.tau_label.clone(),
            };
            System::Fps(parse_fps(&text, &options).with_context(|| format!("in `{origin}`"))?)
        }
    })
}

pub fn require_fps(system: System, command: &str) -> Result<Fps> {
    match system {
        System::Fps(f) => Ok(f),
        System::Aut(_) => bail!("`{command}` needs an .fps system"),
    }
}

pub fn require_aut(system: System, command: &str) -> Result<Lts> {
    match system {
        System::Aut(l) => Ok(l),
        System::Fps(_) => bail!("`{command}` needs an .aut system"),
    }
}

/// `<stem>.min.<ext>` next to `input`.
pub fn default_output(input: &Path, format: InputFormat) -> std::path::PathBuf {
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("system");
    let ext = match format {
        InputFormat::Aut => "aut",
        InputFormat::Fps => "fps",
    };
    input.with_file_name(format!("{stem}.min.{ext}"))
}
