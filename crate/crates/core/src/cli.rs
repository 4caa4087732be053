//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{self, ShiftMethod};
use crate::chart::{self, ChartStyle};
use crate::coefficients::RingContext;
use crate::error::{Result, SsError};
use crate::json;
use crate::page::{Page, Window};
use crate::picard;
use crate::presets::{self, PresetId};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "ssforge", version, about = "Symbolic C2 spectral sequences for Lubin-Tate theory at p = 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Txt,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one page of a preset spectral sequence.
    Compute {
        /// Preset name, optionally with `:k` for the parametrized presets.
        #[arg(long)]
        preset: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        height: u32,
        /// `a:b,c:d`, half-open stems then filtrations; defaults to two periods.
        #[arg(long)]
        window: Option<String>,
        /// A page number `r >= 2`, or `einf`.
        #[arg(long, default_value = "einf")]
        page: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble the Picard group.
    Picard {
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gross-Hopkins shift of the fixed points.
    GhShift {
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: ShiftMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check and print one JSON report.
    Verify {
        #[arg(long)]
        height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a page dump produced by `compute --format json`.
    Chart {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_page(s: &str) -> Result<Option<u32>> {
    if s == "einf" {
        return Ok(None);
    }
    match s.parse::<u32>() {
        Ok(r) if r >= 2 => Ok(Some(r)),
        _ => Err(SsError::BadWindow(format!("page must be an integer >= 2 or einf, got {s}"))),
    }
}

fn parse_preset(name: &str, k: Option<u32>) -> Result<PresetId> {
    if name.contains(':') {
        name.parse()
    } else {
        PresetId::from_name(name, k)
    }
}

fn render(p: &Page, arrows: &[chart::Arrow], format: Format, period: i64) -> String {
    let style = ChartStyle { period, ..ChartStyle::default() };
    match format {
        Format::Json => json::page_to_json(p),
        Format::Txt => chart::render_text(p, &style),
        Format::Svg => chart::render_svg(p, arrows, &style),
    }
}

fn compute(
    preset: &str,
    k: Option<u32>,
    height: u32,
    window: Option<&str>,
    page: &str,
    format: Format,
) -> Result<String> {
    let ctx = RingContext::new(height)?;
    let id = parse_preset(preset, k)?;
    let window = match window {
        Some(w) => Window::parse(w)?,
        None => presets::default_window(id, &ctx),
    };
    let ss = presets::build(id, &ctx, window)?;
    let (p, arrows) = match parse_page(page)? {
        None => (ss.einf()?, Vec::new()),
        Some(r) => {
            let padded = ss.page(r)?;
            padded.check_untainted()?;
            let arrows = chart::arrows(&padded, &ss.rules);
            (padded.clipped(), arrows)
        }
    };
    Ok(render(&p, &arrows, format, presets::period(&ctx)))
}

/// Writes to a sibling temporary file and renames, so a failure leaves no partial output.
fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        None => std::io::stdout().write_all(text.as_bytes()),
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path).inspect_err(|_| {
                let _ = std::fs::remove_file(&tmp);
            })
        }
    }
}

fn execute(cmd: &Command) -> Result<(String, bool)> {
    Ok(match cmd {
        Command::Compute { preset, k, height, window, page, format, .. } => {
            (compute(preset, *k, *height, window.as_deref(), page, *format)?, true)
        }
        Command::Picard { height, format, .. } => {
            let r = picard::assemble_picard(&RingContext::new(*height)?)?;
            let text = match format {
                Format::Txt => r.table(),
                _ => json::to_sorted_json(&r),
            };
            (text, true)
        }
        Command::GhShift { height, method, .. } => {
            (json::to_sorted_json(&analysis::gh_shift(&RingContext::new(*height)?, *method)?), true)
        }
        Command::Verify { height, .. } => {
            let r = verify::run(&RingContext::new(*height)?);
            (json::to_sorted_json(&r), r.ok)
        }
        Command::Chart { input, format, .. } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| SsError::Json(format!("{}: {e}", input.display())))?;
            let p = json::page_from_json(&text)?;
            let period = 1i64 << (p.height + 2);
            (render(&p, &[], *format, period), true)
        }
    })
}

fn out_of(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Compute { out, .. }
        | Command::Picard { out, .. }
        | Command::GhShift { out, .. }
        | Command::Verify { out, .. }
        | Command::Chart { out, .. } => out.as_deref(),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&text, out_of(&cli.command)) {
                eprintln!("error: {e}");
                return 1;
            }
            if ok {
                0
            } else {
                eprintln!("error: some checks failed");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
