//! `glyphgeom` command-line front end.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use glyphgeom::corpus::{CorpusConfig, Split};
use glyphgeom::features::segment_dump;
use glyphgeom::ingest::{encode_pbm, Encoding, DEFAULT_THRESHOLD};
use glyphgeom::record::{read_records, write_records, RecordFormat};
use glyphgeom::{
    evaluate, extract_features, parse_image, thin, BitGrid, Dataset, FeatureVector, ImageFormat,
};
use rayon::prelude::*;
use walkdir::WalkDir;

const THREADS_VAR: &str = "GLYPHGEOM_THREADS";
const IMAGE_EXTENSIONS: [&str; 3] = ["pbm", "pgm", "txt"];

#[derive(Parser)]
#[command(
    name = "glyphgeom",
    version,
    about = "Geometric feature extraction for character skeletons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract one feature record from an image.
    Extract {
        image: PathBuf,
        #[arg(long)]
        label: Option<String>,
        /// Defaults to the --out extension, else jsonl.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract one record per image under a directory, in path order.
    Batch {
        dir: PathBuf,
        /// `.csv` writes CSV, anything else JSON lines.
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "labels-from", value_enum)]
        labels_from: Option<LabelSource>,
    },
    /// Print the per-zone segment dump.
    Segments { image: PathBuf },
    /// Binarize and thin an image, writing a plain PBM.
    Skeletonize {
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: u8,
    },
    /// Generate the synthetic A–Z corpus with train/test feature files.
    GenCorpus {
        /// Training instances per letter.
        #[arg(long)]
        train: usize,
        /// Test instances per letter.
        #[arg(long)]
        test: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// k-NN accuracy and confusion matrix.
    Eval {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, default_value_t = glyphgeom::classify::DEFAULT_K)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

impl From<Format> for RecordFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Jsonl => RecordFormat::Jsonl,
            Format::Csv => RecordFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelSource {
    Dirname,
}

/// A failed command: exit 1 for domain errors, 2 for bad input or usage.
#[derive(Debug)]
enum Failure {
    Domain(String),
    Input(String),
}

impl Failure {
    fn at(input: &Path, e: glyphgeom::Error) -> Self {
        let msg = format!("{}: {e}", input.display());
        match e {
            glyphgeom::Error::Parse { .. } | glyphgeom::Error::InvalidArgument(_) => {
                Failure::Input(msg)
            }
            _ => Failure::Domain(msg),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Failure::Input(format!("{}: {e}", path.display()))
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> CmdResult {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => write(p, text.as_bytes()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

/// Decodes, binarizes and thins an image file.
fn load_skeleton(path: &Path, threshold: u8) -> Result<BitGrid, Failure> {
    let bytes = read(path)?;
    let raster =
        parse_image(&bytes, ImageFormat::detect(&bytes)).map_err(|e| Failure::at(path, e))?;
    Ok(thin(&raster.into_binary(threshold)))
}

fn features_of(path: &Path) -> Result<FeatureVector, Failure> {
    let skel = load_skeleton(path, DEFAULT_THRESHOLD)?;
    extract_features(&skel).map_err(|e| Failure::at(path, e))
}

fn extract(
    image: &Path,
    label: Option<String>,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let mut fv = features_of(image)?.with_source(image.to_string_lossy());
    if let Some(l) = label {
        fv = fv.with_label(l);
    }
    let format = match (format, out) {
        (Some(f), _) => f.into(),
        (None, Some(p)) => RecordFormat::from_path(p),
        (None, None) => RecordFormat::Jsonl,
    };
    emit(out, &write_records(&[fv], format))
}

/// Image files under `dir` as (absolute, relative with `/` separators),
/// sorted by relative path.
fn image_files(dir: &Path) -> Result<Vec<(PathBuf, String)>, Failure> {
    let mut files = Vec::new();
    for entry in WalkDir::new(dir) {
        let entry = entry.map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        let is_image = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| IMAGE_EXTENSIONS.iter().any(|x| x.eq_ignore_ascii_case(e)));
        if !entry.file_type().is_file() || !is_image {
            continue;
        }
        let rel = path
            .strip_prefix(dir)
            .expect("walkdir yields paths under its root");
        let rel: Vec<_> = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect();
        files.push((path.to_path_buf(), rel.join("/")));
    }
    files.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(files)
}

fn batch(dir: &Path, out: &Path, labels_from: Option<LabelSource>) -> CmdResult {
    if !dir.is_dir() {
        return Err(Failure::Input(format!(
            "{}: not a directory",
            dir.display()
        )));
    }
    let files = image_files(dir)?;
    let records = files
        .par_iter()
        .map(|(path, rel)| {
            let mut fv = features_of(path)?.with_source(rel.as_str());
            if labels_from.is_some() {
                let parent = path
                    .parent()
                    .filter(|p| *p != dir)
                    .and_then(|p| p.file_name());
                match parent {
                    Some(name) => fv = fv.with_label(name.to_string_lossy()),
                    None => {
                        return Err(Failure::Input(format!(
                            "{}: no parent directory to label from",
                            path.display()
                        )))
                    }
                }
            }
            Ok(fv)
        })
        .collect::<Result<Vec<_>, _>>()?;
    write(
        out,
        write_records(&records, RecordFormat::from_path(out)).as_bytes(),
    )
}

fn segments(image: &Path) -> CmdResult {
    let skel = load_skeleton(image, DEFAULT_THRESHOLD)?;
    emit(
        None,
        &segment_dump(&skel).map_err(|e| Failure::at(image, e))?,
    )
}

fn skeletonize(image: &Path, out: &Path, threshold: u8) -> CmdResult {
    let skel = load_skeleton(image, threshold)?;
    write(out, &encode_pbm(&skel, Encoding::Plain))
}

fn gen_corpus(n_train: usize, n_test: usize, seed: u64, out: &Path) -> CmdResult {
    let bad = |e| Failure::at(out, e);
    let samples = CorpusConfig::default()
        .generate(n_train, n_test, seed)
        .map_err(bad)?;
    let records = samples
        .par_iter()
        .map(|s| {
            extract_features(&s.image)
                .map(|fv| fv.with_label(s.label.to_string()).with_source(s.path()))
        })
        .collect::<glyphgeom::Result<Vec<_>>>()
        .map_err(bad)?;
    let (train, test): (Vec<_>, Vec<_>) = samples
        .iter()
        .zip(records)
        .partition(|(s, _)| s.split == Split::Train);
    let strip = |v: Vec<(_, FeatureVector)>| v.into_iter().map(|(_, fv)| fv).collect::<Vec<_>>();
    write(
        &out.join("train.jsonl"),
        write_records(&strip(train), RecordFormat::Jsonl).as_bytes(),
    )?;
    write(
        &out.join("test.jsonl"),
        write_records(&strip(test), RecordFormat::Jsonl).as_bytes(),
    )?;
    for s in &samples {
        write(&out.join(s.path()), &encode_pbm(&s.image, Encoding::Plain))?;
    }
    Ok(())
}

fn load_dataset(path: &Path) -> Result<Dataset, Failure> {
    let text = String::from_utf8(read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let records =
        read_records(&text, RecordFormat::from_path(path)).map_err(|e| Failure::at(path, e))?;
    Dataset::new(records).map_err(|e| Failure::at(path, e))
}

fn eval(train: &Path, test: &Path, k: usize) -> CmdResult {
    let train_set = load_dataset(train)?;
    let test_set = load_dataset(test)?;
    let report = evaluate(&train_set, &test_set, k).map_err(|e| {
        let culprit = if matches!(e, glyphgeom::Error::InvalidArgument(_)) && test_set.is_empty() {
            test
        } else {
            train
        };
        Failure::at(culprit, e)
    })?;
    emit(None, &report.to_string())
}

fn configure_threads() -> CmdResult {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Input(format!(
            "{THREADS_VAR}: expected a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("{THREADS_VAR}: {e}")))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::Extract {
            image,
            label,
            format,
            out,
        } => extract(&image, label, format, out.as_deref()),
        Command::Batch {
            dir,
            out,
            labels_from,
        } => batch(&dir, &out, labels_from),
        Command::Segments { image } => segments(&image),
        Command::Skeletonize {
            image,
            out,
            threshold,
        } => skeletonize(&image, &out, threshold),
        Command::GenCorpus {
            train,
            test,
            seed,
            out,
        } => gen_corpus(train, test, seed, &out),
        Command::Eval { train, test, k } => eval(&train, &test, k),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("glyphgeom: {f}");
            ExitCode::from(f.code())
        }
    }
}
