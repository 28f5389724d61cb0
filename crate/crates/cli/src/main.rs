use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistgab::field::prime_power;
use twistgab::mrd::{self, EtaPicker, SubfieldChain};
use twistgab::rank::{self, DEFAULT_SUBSPACE_CAP};
use twistgab::text::{self, CodeInput};
use twistgab::{equivalence, Elem, Field, FieldSpec, RankCode, TwistMode};

/// Twisted Gabidulin codes: construction, MRD verification and equivalence.
///
/// Exit status is 0 for an affirmative result, 1 for a negative finding and
/// 2 for usage or data errors.
#[derive(Parser)]
#[command(name = "twistgab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its parameter file.
    Construct(ConstructArgs),
    /// Decide whether a code is MRD.
    VerifyMrd(VerifyArgs),
    /// Brute-force minimum rank distance.
    Distance(DistanceArgs),
    /// Encode a message.
    Encode(EncodeArgs),
    /// Exhaustive semilinear equivalence search.
    Equiv(EquivArgs),
    /// List subfield-chain parameters at the maximal length m / 2^ell.
    Search(SearchArgs),
}

#[derive(Args)]
struct CodeFileArgs {
    /// Code parameter file.
    file: PathBuf,
    /// Accept t_ell = n - k.
    #[arg(long)]
    relaxed_t: bool,
}

impl CodeFileArgs {
    fn mode(&self) -> TwistMode {
        if self.relaxed_t {
            TwistMode::Relaxed
        } else {
            TwistMode::Strict
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructMode {
    Explicit,
    Theorem2,
}

#[derive(Args)]
struct ConstructArgs {
    mode: ConstructMode,
    /// Parameter file (explicit mode).
    file: Option<PathBuf>,
    #[arg(long)]
    relaxed_t: bool,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    /// Subfield degrees s_0,...,s_ell.
    #[arg(long, value_delimiter = ',')]
    chain: Vec<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Hooks t_1,...,t_ell.
    #[arg(long, value_delimiter = ',')]
    t: Vec<usize>,
    /// λ rows, `;`-separated, entries `,`-separated. Defaults to (1,0,...,0).
    #[arg(long)]
    lambda: Option<String>,
    /// η_1,...,η_ell. Defaults to the first admissible element for each.
    #[arg(long, value_delimiter = ',')]
    eta: Vec<u64>,
    /// Write the parameter file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the generator matrix.
    #[arg(long)]
    gen_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    Lemma1,
    Brute,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    code: CodeFileArgs,
    #[arg(long, value_enum, default_value = "lemma1")]
    method: Method,
    /// Cap on enumerated subspaces or codewords.
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_CAP)]
    max_enum: u128,
}

#[derive(Args)]
struct DistanceArgs {
    /// Code parameter file or field line followed by generator rows.
    file: PathBuf,
    #[arg(long)]
    relaxed_t: bool,
    #[arg(long, default_value_t = rank::DEFAULT_CODEWORD_CAP)]
    max_enum: u128,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeFileArgs,
    /// Message symbols f_0 ... f_{k-1}.
    msg: Vec<u64>,
    /// Draw a random message instead.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct EquivArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long)]
    relaxed_t: bool,
    /// Maximum number of (A, j) candidates to examine.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u128,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    ell: u32,
    /// Construct each parameter set and check it is MRD.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_CAP)]
    max_enum: u128,
}

enum Outcome {
    Yes(String),
    No(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::VerifyMrd(a) => verify(a),
        Command::Distance(a) => distance(a),
        Command::Encode(a) => encode(a),
        Command::Equiv(a) => equiv(a),
        Command::Search(a) => search(a),
    };
    match result {
        Ok(Outcome::Yes(s)) => {
            print!("{s}");
            ExitCode::from(0)
        }
        Ok(Outcome::No(s)) => {
            print!("{s}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_code(args: &CodeFileArgs) -> Result<RankCode> {
    Ok(text::parse_code(&read(&args.file)?, args.mode())?)
}

fn field_for(q: u64, m: u32) -> Result<Field> {
    let (p, a) = prime_power(q).ok_or_else(|| anyhow!("q = {q} is not a prime power"))?;
    Ok(Field::new(FieldSpec::new(p, a, m))?)
}

fn parse_lambda(field: &Field, s: &str) -> Result<Vec<Vec<Elem>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    let v: u64 = e
                        .trim()
                        .parse()
                        .with_context(|| format!("bad element `{e}`"))?;
                    Ok(field.elem(v)?)
                })
                .collect()
        })
        .collect()
}

fn construct(a: ConstructArgs) -> Result<Outcome> {
    let code = match a.mode {
        ConstructMode::Explicit => {
            let file = a
                .file
                .as_ref()
                .ok_or_else(|| anyhow!("explicit mode needs a file"))?;
            let mode = if a.relaxed_t {
                TwistMode::Relaxed
            } else {
                TwistMode::Strict
            };
            text::parse_code(&read(file)?, mode)?
        }
        ConstructMode::Theorem2 => {
            if a.relaxed_t {
                bail!("the subfield-chain construction requires t_ell < n - k");
            }
            let need = |name: &str| anyhow!("theorem2 mode needs --{name}");
            let q = a.q.ok_or_else(|| need("q"))?;
            let m = a.m.ok_or_else(|| need("m"))?;
            let n = a.n.ok_or_else(|| need("n"))?;
            let k = a.k.ok_or_else(|| need("k"))?;
            let field = field_for(q, m)?;
            let chain = SubfieldChain::new(a.chain.clone(), m)?;
            let lambdas = match &a.lambda {
                Some(s) => parse_lambda(&field, s)?,
                None if k > 0 => mrd::unit_lambdas(chain.ell(), k),
                None => bail!("k must be positive"),
            };
            let picker = if a.eta.is_empty() {
                EtaPicker::First
            } else {
                EtaPicker::Explicit(
                    a.eta
                        .iter()
                        .map(|&v| field.elem(v))
                        .collect::<Result<_, _>>()?,
                )
            };
            mrd::construct_theorem2(&field, &chain, n, k, &a.t, lambdas, picker)?
        }
    };
    let params = text::format_code(&code);
    if let Some(path) = &a.gen_out {
        write(path, &text::format_matrix(code.generator_matrix()))?;
    }
    match &a.out {
        Some(path) => {
            write(path, &params)?;
            Ok(Outcome::Yes("OK\n".into()))
        }
        None => Ok(Outcome::Yes(format!("OK\n{params}"))),
    }
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let code = load_code(&a.code)?;
    let target = code.n() - code.k() + 1;
    let lemma = match a.method {
        Method::Brute => None,
        _ => Some(mrd::is_mrd(&code, a.max_enum)?),
    };
    let brute = match a.method {
        Method::Lemma1 => None,
        _ => Some(
            rank::min_rank_distance_bruteforce(code.field(), code.generator_matrix(), a.max_enum)?
                .ok_or_else(|| anyhow!("zero code"))?,
        ),
    };
    if let (Some(l), Some(b)) = (&lemma, &brute) {
        if l.is_mrd() != (b.distance == target) {
            bail!(
                "methods disagree: determinant scan says {}, minimum distance is {}",
                if l.is_mrd() { "MRD" } else { "not MRD" },
                b.distance
            );
        }
    }
    let is_mrd = match (&lemma, &brute) {
        (Some(l), _) => l.is_mrd(),
        (None, Some(b)) => b.distance == target,
        (None, None) => unreachable!(),
    };
    let mut out = match &lemma {
        Some(l) => text::format_verdict(l),
        None if is_mrd => "MRD\n".to_string(),
        None => "NOT-MRD\n".to_string(),
    };
    if let Some(b) = &brute {
        if lemma.is_none() && !is_mrd {
            let w: Vec<String> = b.witness.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("codeword {}\nrank {}\n", w.join(" "), b.distance));
        }
        out.push_str(&format!("DIST={}\n", b.distance));
    }
    Ok(if is_mrd {
        Outcome::Yes(out)
    } else {
        Outcome::No(out)
    })
}

fn distance(a: DistanceArgs) -> Result<Outcome> {
    let mode = if a.relaxed_t {
        TwistMode::Relaxed
    } else {
        TwistMode::Strict
    };
    let input = text::parse_code_or_matrix(&read(&a.file)?, mode)?;
    let report = rank::min_rank_distance_bruteforce(input.field(), input.generator(), a.max_enum)?
        .ok_or_else(|| anyhow!("zero code has no minimum distance"))?;
    let w: Vec<String> = report.witness.iter().map(|e| e.to_string()).collect();
    Ok(Outcome::Yes(format!(
        "DIST={}\ncodeword {}\n",
        report.distance,
        w.join(" ")
    )))
}

fn encode(a: EncodeArgs) -> Result<Outcome> {
    let code = load_code(&a.code)?;
    let field = code.field();
    let msg: Vec<Elem> = match a.seed {
        Some(seed) => {
            if !a.msg.is_empty() {
                bail!("give either a message or --seed, not both");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..code.k()).map(|_| field.random(&mut rng)).collect()
        }
        None => a
            .msg
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<_, _>>()?,
    };
    let c = code.encode(&msg)?;
    let join = |v: &[Elem]| {
        v.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(Outcome::Yes(format!(
        "OK\nmessage {}\ncodeword {}\n",
        join(&msg),
        join(&c)
    )))
}

fn load_input(path: &Path, relaxed: bool) -> Result<CodeInput> {
    let mode = if relaxed {
        TwistMode::Relaxed
    } else {
        TwistMode::Strict
    };
    Ok(text::parse_code_or_matrix(&read(path)?, mode)?)
}

fn equiv(a: EquivArgs) -> Result<Outcome> {
    let c1 = load_input(&a.first, a.relaxed_t)?;
    let c2 = load_input(&a.second, a.relaxed_t)?;
    if c1.field() != c2.field() {
        bail!("the two codes live over different fields");
    }
    let found =
        equivalence::brute_force_equivalent(c1.field(), c1.generator(), c2.generator(), a.budget)?;
    Ok(match found {
        Some(t) => Outcome::Yes(format!("EQUIVALENT\n{}", text::format_transform(&t))),
        None => Outcome::No("NOT-EQUIVALENT\n".into()),
    })
}

fn search(a: SearchArgs) -> Result<Outcome> {
    let field = field_for(a.q, a.m)?;
    let (n, chain, params) = mrd::search_parameters(a.m, a.ell)?;
    let degrees = |c: &SubfieldChain| {
        c.degrees()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = format!(
        "OK\nlength n={n} chain={} sets={}\n",
        degrees(&chain),
        params.len()
    );
    for p in params {
        let t: Vec<String> = p.hooks.iter().map(|t| t.to_string()).collect();
        out.push_str(&format!(
            "params chain={} n={} k={} t={}",
            degrees(&p.chain),
            p.n,
            p.k,
            t.join(",")
        ));
        if a.verify {
            let code = mrd::construct_theorem2(
                &field,
                &p.chain,
                p.n,
                p.k,
                &p.hooks,
                mrd::unit_lambdas(p.hooks.len(), p.k),
                EtaPicker::First,
            )?;
            if !mrd::is_mrd(&code, a.max_enum)?.is_mrd() {
                bail!(
                    "subfield-chain code failed the MRD test: {}",
                    text::format_code(&code)
                );
            }
            out.push_str(" MRD");
        }
        out.push('\n');
    }
    Ok(Outcome::Yes(out))
}
