//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource refusal.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{
    extremal_bound, fit_template, is_quasi_cyclic, is_self_dual, macwilliams_selfcheck,
    weight_distribution_gray, EnumeratorTemplate, WeightDistribution,
};
use crate::bits::BitVector;
use crate::codespec::{CodeSpec, Status};
use crate::decode::{decode, simulate, ChannelModel, DecoderMode, ReceivedFrame};
use crate::error::{Error, Result};
use crate::registry::{default_fixtures_dir, Registry};
use crate::tbcc::encode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tbsd",
    version,
    about = "Self-dual tailbiting convolutional codes"
)]
pub struct Cli {
    /// Fixture directory (defaults to $TBSD_FIXTURES or the bundled fixtures)
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the generator matrix of a code
    Build {
        /// Spec file or registry name
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check self-duality, quasi-cyclicity and optionally the full enumerator
    Verify {
        spec: String,
        #[arg(long)]
        enumerate: bool,
        /// Template file or bundled template name (implies --enumerate)
        #[arg(long)]
        template: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compute the full weight distribution
    Enumerate {
        spec: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit an enumerator template to a distribution file
    Fit {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        template: String,
    },
    /// Encode packed information words
    Encode {
        spec: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode packed hard frames or f32 soft frames into packed information words
    Decode {
        spec: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::ExactMl)]
        mode: Mode,
        #[arg(long, default_value_t = DecoderMode::DEFAULT_WAVA_ITERS)]
        iters: usize,
        /// Input holds little-endian f32 reliabilities instead of packed bits
        #[arg(long)]
        soft: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo bit/frame error simulation
    Simulate {
        spec: String,
        /// bsc:P or awgn:EBN0_DB
        #[arg(long)]
        channel: String,
        #[arg(long, default_value_t = 1000)]
        frames: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::ExactMl)]
        mode: Mode,
        #[arg(long, default_value_t = DecoderMode::DEFAULT_WAVA_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Leave out the elapsed_ms line
        #[arg(long)]
        omit_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List or show the bundled code fixtures
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Subcommand, Debug)]
enum RegistryAction {
    List,
    Show { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    #[value(name = "exact_ml")]
    ExactMl,
    #[value(name = "wava")]
    Wava,
}

impl Mode {
    fn decoder(self, iters: usize) -> DecoderMode {
        match self {
            Mode::ExactMl => DecoderMode::ExactMl,
            Mode::Wava => DecoderMode::Wava { max_iters: iters },
        }
    }
}

/// Failure of a requested verification check.
struct CheckFailed(String);

enum Failure {
    Check(CheckFailed),
    Err(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parses `args` and runs the command, printing to stdout/stderr. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let fixtures = cli.fixtures.clone().unwrap_or_else(default_fixtures_dir);
    match dispatch(cli.command, &fixtures) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            EXIT_OK
        }
        Err(Failure::Check(CheckFailed(report))) => {
            print!("{report}");
            let _ = std::io::stdout().flush();
            EXIT_VERIFY
        }
        Err(Failure::Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Refusal(_) => EXIT_REFUSED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn resolve_spec(arg: &str, fixtures: &Path) -> Result<CodeSpec> {
    let path = Path::new(arg);
    if path.exists() {
        return CodeSpec::load(path);
    }
    let candidate = fixtures.join("codes").join(format!("{arg}.spec"));
    if candidate.exists() {
        return CodeSpec::load(candidate);
    }
    Err(Error::param(format!(
        "no spec file or registry entry named {arg:?}"
    )))
}

fn resolve_template(arg: &str, fixtures: &Path) -> Result<EnumeratorTemplate> {
    let path = Path::new(arg);
    if path.exists() {
        return EnumeratorTemplate::load(path);
    }
    EnumeratorTemplate::load(fixtures.join("templates").join(format!("{arg}.tpl")))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

fn warn_overlap(spec: &CodeSpec) {
    if spec.rows_overlap() {
        eprintln!(
            "warning: {}: n = {} is shorter than twice the mixed string; rows wrap onto themselves",
            spec.name, spec.n
        );
    }
}

fn dispatch(cmd: Command, fixtures: &Path) -> CmdResult {
    match cmd {
        Command::Build { spec, out } => cmd_build(&resolve_spec(&spec, fixtures)?, out.as_deref()),
        Command::Verify {
            spec,
            enumerate,
            template,
            threads,
        } => {
            let tpl = template
                .map(|t| resolve_template(&t, fixtures))
                .transpose()?;
            cmd_verify(
                &resolve_spec(&spec, fixtures)?,
                enumerate || tpl.is_some(),
                tpl.as_ref(),
                threads,
            )
        }
        Command::Enumerate { spec, threads, out } => {
            cmd_enumerate(&resolve_spec(&spec, fixtures)?, threads, out.as_deref())
        }
        Command::Fit { dist, template } => {
            let text = String::from_utf8(read_file(&dist)?)
                .map_err(|_| Error::param("distribution file is not UTF-8"))?;
            let d = WeightDistribution::from_file_text(&text)?;
            let fit = fit_template(&d, &resolve_template(&template, fixtures)?)?;
            let report = format!("template: {template}\n{}", fit.report());
            if fit.consistent {
                Ok(report)
            } else {
                Err(Failure::Check(CheckFailed(report)))
            }
        }
        Command::Encode { spec, input, out } => {
            let spec = resolve_spec(&spec, fixtures)?;
            let data = read_file(&input)?;
            let encoded = encode_frames(&spec, &data)?;
            write_file(&out, &encoded)?;
            Ok(format!(
                "encoded {} frames\n",
                data.len() / spec.k().div_ceil(8)
            ))
        }
        Command::Decode {
            spec,
            input,
            mode,
            iters,
            soft,
            out,
        } => {
            let spec = resolve_spec(&spec, fixtures)?;
            let data = read_file(&input)?;
            let (decoded, summary) = decode_frames(&spec, &data, soft, mode.decoder(iters))?;
            write_file(&out, &decoded)?;
            Ok(summary)
        }
        Command::Simulate {
            spec,
            channel,
            frames,
            seed,
            mode,
            iters,
            threads,
            omit_timing,
            out,
        } => {
            let spec = resolve_spec(&spec, fixtures)?;
            let ch = ChannelModel::parse(&channel, seed)?;
            let report = simulate(&spec, &ch, frames, mode.decoder(iters), threads)?;
            let text = report.to_text(spec.k(), !omit_timing);
            match out {
                Some(path) => {
                    write_file(&path, text.as_bytes())?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Registry { action } => {
            let reg = Registry::load(fixtures)?;
            match action {
                RegistryAction::List => {
                    let mut s = String::new();
                    for e in reg.entries() {
                        let status = match e.status {
                            Status::Ready => "ready",
                            Status::PendingTranscription => "pending-transcription",
                        };
                        let _ = writeln!(
                            s,
                            "{}\t{}\tn={}\t{}",
                            e.name,
                            e.construction.keyword(),
                            e.n,
                            status
                        );
                    }
                    Ok(s)
                }
                RegistryAction::Show { name } => reg
                    .get(&name)
                    .map(|e| e.to_text())
                    .ok_or_else(|| Error::param(format!("no registry entry {name:?}")).into()),
            }
        }
    }
}

fn cmd_build(spec: &CodeSpec, out: Option<&Path>) -> CmdResult {
    warn_overlap(spec);
    let g = spec.generator()?;
    let summary = format!(
        "n: {}\nk: {}\nconstruction: {}\n",
        spec.n,
        spec.k(),
        spec.construction.keyword()
    );
    match out {
        Some(path) => {
            write_file(path, g.to_text().as_bytes())?;
            Ok(summary)
        }
        None => {
            eprint!("{summary}");
            Ok(g.to_text())
        }
    }
}

fn cmd_verify(
    spec: &CodeSpec,
    enumerate: bool,
    tpl: Option<&EnumeratorTemplate>,
    threads: usize,
) -> CmdResult {
    let mut s = format!(
        "code: {}\nn: {}\nk: {}\nconstruction: {}\n",
        spec.name,
        spec.n,
        spec.k(),
        spec.construction.keyword()
    );
    let mut failed: Option<&'static str> = None;
    let mut check = |s: &mut String, name: &'static str, ok: bool, detail: String| {
        let _ = writeln!(s, "{name}: {} {detail}", if ok { "ok" } else { "FAIL" });
        if !ok && failed.is_none() {
            failed = Some(name);
        }
    };

    if spec.status == Status::PendingTranscription {
        check(&mut s, "fixture", false, "(pending transcription)".into());
        return finish(s, failed);
    }
    warn_overlap(spec);
    let g = spec.generator()?;
    let rank = g.rank();
    check(&mut s, "rank", rank == spec.k(), format!("({rank})"));
    check(
        &mut s,
        "self_orthogonal",
        g.is_self_orthogonal(),
        String::new(),
    );
    check(&mut s, "self_dual", is_self_dual(&g)?, String::new());
    check(
        &mut s,
        "quasi_cyclic_l2",
        is_quasi_cyclic(&g, 2),
        String::new(),
    );

    if enumerate {
        let start = Instant::now();
        let d = weight_distribution_gray(&g, threads)?;
        let _ = writeln!(s, "enumerated: {} codewords", d.total());
        eprintln!("enumeration took {} ms", start.elapsed().as_millis());
        check(&mut s, "identity_codeword", d.count(0) == 1, String::new());
        match d.min_distance() {
            Ok(dmin) => {
                let _ = writeln!(s, "min_distance: {dmin}");
                let bound = extremal_bound(spec.n);
                check(
                    &mut s,
                    "extremal_bound",
                    dmin <= bound,
                    format!("(d = {dmin} <= {bound})"),
                );
            }
            Err(e) => check(&mut s, "min_distance", false, format!("({e})")),
        }
        let _ = writeln!(s, "parity: {}", d.parity_class().as_str());
        check(&mut s, "symmetric", d.is_symmetric(), String::new());
        check(
            &mut s,
            "macwilliams",
            macwilliams_selfcheck(&d, rank)?,
            String::new(),
        );
        if let Some(t) = tpl {
            let fit = fit_template(&d, t)?;
            let params: Vec<String> = fit.params.iter().map(|(p, v)| format!("{p}={v}")).collect();
            check(
                &mut s,
                "template",
                fit.consistent,
                format!("{} {}", t.name, params.join(" ")),
            );
            for (p, v) in &fit.params {
                let _ = writeln!(s, "{p}: {v}");
            }
        }
    }
    finish(s, failed)
}

fn finish(mut s: String, failed: Option<&str>) -> CmdResult {
    match failed {
        None => {
            s.push_str("result: PASS\n");
            Ok(s)
        }
        Some(name) => {
            let _ = writeln!(s, "result: FAIL ({name})");
            eprintln!("verification failed: {name}");
            Err(Failure::Check(CheckFailed(s)))
        }
    }
}

fn cmd_enumerate(spec: &CodeSpec, threads: usize, out: Option<&Path>) -> CmdResult {
    let g = spec.generator()?;
    let start = Instant::now();
    let d = weight_distribution_gray(&g, threads)?;
    let elapsed = start.elapsed().as_millis();
    eprintln!("enumeration took {elapsed} ms");
    // elapsed time stays out of the file so outputs are reproducible
    let text = d.to_file_text(&[
        ("code", spec.name.clone()),
        ("n", spec.n.to_string()),
        ("k", g.num_rows().to_string()),
    ]);
    match out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Encodes consecutive byte-aligned packed information words.
pub fn encode_frames(spec: &CodeSpec, data: &[u8]) -> Result<Vec<u8>> {
    let in_bytes = spec.k().div_ceil(8);
    if !data.len().is_multiple_of(in_bytes) {
        return Err(Error::param(format!(
            "input length {} is not a multiple of {in_bytes} bytes per information word",
            data.len()
        )));
    }
    let mut out = Vec::new();
    for chunk in data.chunks(in_bytes) {
        let u = BitVector::from_packed_bytes(spec.k(), chunk)?;
        out.extend(encode(spec, &u)?.to_packed_bytes());
    }
    Ok(out)
}

/// Decodes consecutive frames; returns packed information words and a summary.
pub fn decode_frames(
    spec: &CodeSpec,
    data: &[u8],
    soft: bool,
    mode: DecoderMode,
) -> Result<(Vec<u8>, String)> {
    let frame_bytes = if soft { 4 * spec.n } else { spec.n.div_ceil(8) };
    if !data.len().is_multiple_of(frame_bytes) {
        return Err(Error::param(format!(
            "input length {} is not a multiple of {frame_bytes} bytes per frame",
            data.len()
        )));
    }
    let mut out = Vec::new();
    let mut total_metric = 0.0;
    let mut frames = 0usize;
    for chunk in data.chunks(frame_bytes) {
        let frame = if soft {
            ReceivedFrame::Soft(
                chunk
                    .chunks_exact(4)
                    .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
                    .collect(),
            )
        } else {
            ReceivedFrame::Hard(BitVector::from_packed_bytes(spec.n, chunk)?)
        };
        let r = decode(&frame, spec, mode)?;
        total_metric += r.metric;
        frames += 1;
        out.extend(r.info.to_packed_bytes());
    }
    Ok((
        out,
        format!(
            "decoded {frames} frames, mode {}, total metric {total_metric}\n",
            mode.name()
        ),
    ))
}
