//! The `mor` command line.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 malformed or
//! unreadable input file, 3 attack or self-test failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::attack::{recover_secret, solve_dlp};
use crate::aut::{Automorphism, GenImageTable};
use crate::bench::bench_run;
use crate::ff::FieldParams;
use crate::files;
use crate::message::{decode_message, encode_message};
use crate::rng::SeededRng;
use crate::scheme::{decrypt, encrypt, keygen, MorPrivateKey};
use crate::ut::UTParams;
use crate::worked_example as wx;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mor",
    version,
    about = "MOR public-key cryptosystem over unitriangular matrix groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message file under a public key.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file with a private key.
    Decrypt(DecryptArgs),
    /// Recover the private exponent from a public key.
    Attack(AttackArgs),
    /// Rebuild the reference UT(4, 1297) key and check every published value.
    SelftestPaper,
    /// Time MOR against El-Gamal and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    gamma: usize,
    /// Monic modulus, constant term first, comma separated.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Matrix size.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct KeygenArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Private exponent; random when absent.
    #[arg(long)]
    m: Option<BigUint>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "mor_pk.json")]
    pk: PathBuf,
    #[arg(long, default_value = "mor_sk.json")]
    sk: PathBuf,
    /// Leave the factored automorphism out of the private key file.
    #[arg(long)]
    strip: bool,
}

#[derive(Debug, Args)]
struct EncryptArgs {
    #[arg(long)]
    pk: PathBuf,
    /// Message bytes.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Session exponent; random when absent.
    #[arg(long)]
    r: Option<BigUint>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct DecryptArgs {
    #[arg(long)]
    sk: PathBuf,
    #[arg(long)]
    ct: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[arg(long)]
    pk: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated `n:p` or `n:p:gamma` entries.
    #[arg(long, value_delimiter = ',', default_value = "2:1297,4:1297")]
    sizes: Vec<String>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn input(path: &Path, e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_BAD_INPUT,
            message: format!("{}: {e}", path.display()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Runs the command line with `args` (program name first). `env_seed` is
/// the fallback for `--seed`.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Keygen(a) => cmd_keygen(a, env_seed),
        Command::Encrypt(a) => cmd_encrypt(a, env_seed),
        Command::Decrypt(a) => cmd_decrypt(a),
        Command::Attack(a) => cmd_attack(a, out),
        Command::SelftestPaper => cmd_selftest(out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn make_rng(seed: Option<u64>, env_seed: Option<&str>) -> std::result::Result<SeededRng, Failure> {
    if let Some(s) = seed {
        return Ok(SeededRng::from_seed(s));
    }
    match env_seed {
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map(SeededRng::from_seed)
            .map_err(|_| Failure::usage(format!("MOR_SEED={s:?} is not an unsigned integer"))),
        None => Ok(SeededRng::from_entropy()),
    }
}

fn group_params(a: &GroupArgs) -> std::result::Result<UTParams, Failure> {
    let field = match &a.modulus {
        Some(m) => FieldParams::new(a.p, a.gamma, m),
        None => FieldParams::with_default_modulus(a.p, a.gamma),
    }
    .map_err(Failure::usage)?;
    UTParams::new(field, a.n).map_err(Failure::usage)
}

fn read(path: &Path) -> std::result::Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_keygen(a: KeygenArgs, env_seed: Option<&str>) -> CliResult {
    let g = group_params(&a.group)?;
    let mut rng = make_rng(a.seed, env_seed)?;
    let (pk, mut sk) = keygen(&g, &mut rng, a.m).map_err(Failure::usage)?;
    if a.strip {
        sk.factors = None;
    }
    write(&a.pk, &files::public_key_to_bytes(&pk))?;
    write(&a.sk, &files::private_key_to_bytes(&pk, &sk))
}

fn cmd_encrypt(a: EncryptArgs, env_seed: Option<&str>) -> CliResult {
    let pk = files::public_key_from_bytes(&read(&a.pk)?).map_err(|e| Failure::input(&a.pk, e))?;
    let msg = read(&a.input)?;
    let g = &pk.params;
    let plain = encode_message(g, &msg).map_err(Failure::usage)?;
    let mut rng = make_rng(a.seed, env_seed)?;
    let ct = encrypt(&pk, &plain, &mut rng, a.r).map_err(Failure::usage)?;
    write(&a.out, &files::ciphertext_to_bytes(g, &ct))
}

fn cmd_decrypt(a: DecryptArgs) -> CliResult {
    let (_, sk): (_, MorPrivateKey) =
        files::private_key_from_bytes(&read(&a.sk)?).map_err(|e| Failure::input(&a.sk, e))?;
    let (g, ct) =
        files::ciphertext_from_bytes(&read(&a.ct)?).map_err(|e| Failure::input(&a.ct, e))?;
    if g != sk.params {
        return Err(Failure::input(
            &a.ct,
            "ciphertext parameters differ from the private key's",
        ));
    }
    let plain = decrypt(&sk, &ct).map_err(|e| Failure::input(&a.ct, e))?;
    let msg = decode_message(&g, &plain).map_err(|e| Failure::input(&a.ct, e))?;
    write(&a.out, &msg)
}

fn cmd_attack(a: AttackArgs, out: &mut dyn Write) -> CliResult {
    let pk = files::public_key_from_bytes(&read(&a.pk)?).map_err(|e| Failure::input(&a.pk, e))?;
    let m = recover_secret(&pk).map_err(|e| Failure {
        code: EXIT_FAILED,
        message: e.to_string(),
    })?;
    let _ = writeln!(out, "{m}");
    Ok(())
}

/// Each check of the reference example as `(description, passed)`.
pub fn selftest_checks() -> Vec<(String, bool)> {
    let mut checks = Vec::new();
    let g = wx::params();
    let f = g.field();

    let m1 = Automorphism::from(wx::map1(&g)).to_table(&g);
    let a1 = g.generator(0);
    let a1_image = g.mul(&a1, &g.pow(&g.generator(5), wx::LAMBDA[0]));
    checks.push((
        "map1: a1 -> a1 a6^984".to_string(),
        m1.map(|t| t.images()[0] == a1_image).unwrap_or(false),
    ));
    let m2 = Automorphism::from(wx::map2(&g)).to_table(&g);
    checks.push((
        "map2 table".to_string(),
        m2.ok() == wx::table_from_words(&g, &wx::MAP2).ok(),
    ));
    let ratios: Vec<u64> = g
        .generator_indices()
        .iter()
        .map(|gi| {
            let w = wx::map3(&g);
            w.ratio(&g, gi.i, gi.i + gi.d).value()
        })
        .collect();
    checks.push((
        format!("w_i^-1 w_(i+d) from {:?} = {:?}", wx::W, wx::RATIOS),
        ratios == wx::RATIOS,
    ));

    let keys = wx::keypair();
    let (phi, phi_m) = match &keys {
        Ok((pk, _)) => (pk.phi.clone(), pk.phi_m.clone()),
        Err(_) => (GenImageTable::identity(&g), GenImageTable::identity(&g)),
    };
    let expect_phi = wx::expected_phi(&g);
    let expect_phi_m = wx::expected_phi_65(&g);
    for j in 0..g.num_generators() {
        checks.push((
            format!("phi(a{}) = {}", j + 1, word_text(&wx::PHI[j])),
            phi.images()[j] == expect_phi.images()[j],
        ));
    }
    for j in 0..g.num_generators() {
        checks.push((
            format!("phi^65(a{}) = {}", j + 1, word_text(&wx::PHI_65[j])),
            phi_m.images()[j] == expect_phi_m.images()[j],
        ));
    }

    let pow = f.pow(&f.from_u64(576), 65).value();
    checks.push((format!("576^65 mod 1297 = {pow}"), pow == 450));
    let dlp = solve_dlp(f, &f.from_u64(576), &f.from_u64(450));
    checks.push((
        "log_576 450 = 65 mod ord(576)".to_string(),
        dlp.map(|r| r.residue == 65 % r.modulus).unwrap_or(false),
    ));
    let recovered = keys.and_then(|(pk, _)| recover_secret(&pk));
    match recovered {
        Ok(m) => checks.push((format!("recovered m = {m}"), m == BigUint::from(wx::M))),
        Err(e) => checks.push((format!("recovered m: {e}"), false)),
    }
    checks
}

fn word_text(w: &[u64]) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, e)| format!("a{}^{}", i + 1, e))
        .collect();
    parts.join(" ")
}

fn cmd_selftest(out: &mut dyn Write) -> CliResult {
    let checks = selftest_checks();
    let mut ok = true;
    for (desc, pass) in &checks {
        ok &= pass;
        let _ = writeln!(out, "{desc} : {}", if *pass { "PASS" } else { "FAIL" });
    }
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_FAILED,
            message: "self-test failed".into(),
        })
    }
}

fn parse_size(s: &str) -> std::result::Result<UTParams, Failure> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let num = |x: &str| {
        x.parse::<u64>()
            .map_err(|_| Failure::usage(format!("bad size {s:?}: expected n:p[:gamma]")))
    };
    let (n, p, gamma) = match parts.as_slice() {
        [n, p] => (num(n)?, num(p)?, 1),
        [n, p, gm] => (num(n)?, num(p)?, num(gm)?),
        _ => {
            return Err(Failure::usage(format!(
                "bad size {s:?}: expected n:p[:gamma]"
            )))
        }
    };
    let field = FieldParams::with_default_modulus(p, gamma as usize).map_err(Failure::usage)?;
    UTParams::new(field, n as usize).map_err(Failure::usage)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CliResult {
    let sizes = a
        .sizes
        .iter()
        .map(|s| parse_size(s))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let report = bench_run(&sizes, a.trials).map_err(Failure::usage)?;
    let csv = report.to_csv();
    match &a.out {
        Some(path) => write(path, csv.as_bytes()),
        None => {
            let _ = write!(out, "{csv}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("mor").chain(args.iter().copied());
        let code = run(argv, None, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run_capture(&["selftest-paper"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("576^65 mod 1297 = 450 : PASS"));
        assert!(out.contains("recovered m = 65 : PASS"));
        assert!(out.contains("phi(a1) = a1^576 a4^972 a6^538 : PASS"));
        assert!(out.contains("phi^65(a6) = a6^85 : PASS"));
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&[]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["keygen", "--n", "4"]).0, 1);
        assert_eq!(
            run_capture(&["keygen", "--p", "1296", "--n", "4", "--seed", "1"]).0,
            1
        );
        assert_eq!(run_capture(&["bench", "--sizes", "4"]).0, 1);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("selftest-paper"));
    }

    #[test]
    fn sizes_parse() {
        assert!(parse_size("4:1297").is_ok());
        let g = parse_size("3:2:2").ok().unwrap();
        assert_eq!(g.field().gamma(), 2);
        assert!(parse_size("4:1297:1:1").is_err());
    }

    #[test]
    fn env_seed_fallback() {
        assert!(make_rng(None, Some("12")).is_ok());
        assert!(make_rng(None, Some("twelve")).is_err());
    }
}
