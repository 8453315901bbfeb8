use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mor::attack::automorphism_order;
use mor::files;
use num_bigint::BigUint;
use tempfile::tempdir;

fn mor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mor"))
        .args(args)
        .current_dir(dir)
        .env_remove("MOR_SEED")
        .output()
        .expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn keygen_is_deterministic_under_seed() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    let args = ["keygen", "--p", "1297", "--n", "4", "--seed", "7"];
    assert!(mor(d, &args).status.success());
    let pk1 = fs::read(d.join("mor_pk.json")).unwrap();
    let sk1 = fs::read(d.join("mor_sk.json")).unwrap();
    assert!(mor(d, &args).status.success());
    assert_eq!(fs::read(d.join("mor_pk.json")).unwrap(), pk1);
    assert_eq!(fs::read(d.join("mor_sk.json")).unwrap(), sk1);
}

#[test]
fn env_seed_is_the_fallback() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    let run = |name: &str, seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_mor"))
            .args([
                "keygen", "--p", "7", "--n", "3", "--pk", name, "--sk", "sk.json",
            ])
            .env("MOR_SEED", seed)
            .current_dir(d)
            .output()
            .unwrap();
        assert!(o.status.success());
        fs::read(d.join(name)).unwrap()
    };
    assert_eq!(run("a.json", "11"), run("b.json", "11"));
    assert_ne!(run("c.json", "11"), run("d.json", "12"));
}

#[test]
fn encrypt_decrypt_round_trip() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    let p61 = ((1u64 << 61) - 1).to_string();
    for (p, n) in [(p61.as_str(), "4"), ("1297", "8")] {
        let o = mor(d, &["keygen", "--p", p, "--n", n, "--seed", "99"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let msg: Vec<u8> = (0..16u8).map(|i| i.wrapping_mul(37) ^ 0xa5).collect();
        fs::write(d.join("msg.bin"), &msg).unwrap();
        let o = mor(
            d,
            &[
                "encrypt",
                "--pk",
                "mor_pk.json",
                "--in",
                "msg.bin",
                "--out",
                "ct.json",
                "--seed",
                "5",
            ],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = mor(
            d,
            &[
                "decrypt",
                "--sk",
                "mor_sk.json",
                "--ct",
                "ct.json",
                "--out",
                "dec.bin",
            ],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(fs::read(d.join("dec.bin")).unwrap(), msg);
    }
}

#[test]
fn extension_field_keys_with_explicit_modulus() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    let o = mor(
        d,
        &[
            "keygen",
            "--p",
            "3",
            "--gamma",
            "2",
            "--modulus",
            "1,0,1",
            "--n",
            "5",
            "--seed",
            "1",
            "--strip",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sk = fs::read_to_string(d.join("mor_sk.json")).unwrap();
    assert!(sk.contains("\"modulus\":[1,0,1]"));
    assert!(!sk.contains("factors"));
    fs::write(d.join("msg.bin"), b"ab").unwrap();
    assert!(mor(
        d,
        &[
            "encrypt",
            "--pk",
            "mor_pk.json",
            "--in",
            "msg.bin",
            "--out",
            "ct.json"
        ]
    )
    .status
    .success());
    assert!(mor(
        d,
        &[
            "decrypt",
            "--sk",
            "mor_sk.json",
            "--ct",
            "ct.json",
            "--out",
            "dec.bin"
        ]
    )
    .status
    .success());
    assert_eq!(fs::read(d.join("dec.bin")).unwrap(), b"ab");

    // x^2 + 2x + 1 = (x + 1)^2 is reducible over F_3
    let o = mor(
        d,
        &[
            "keygen",
            "--p",
            "3",
            "--gamma",
            "2",
            "--modulus",
            "1,2,1",
            "--n",
            "5",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn attack_recovers_an_equivalent_exponent() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    assert!(mor(
        d,
        &["keygen", "--p", "1297", "--n", "4", "--seed", "3", "--m", "123456"]
    )
    .status
    .success());
    let o = mor(d, &["attack", "--pk", "mor_pk.json"]);
    assert!(o.status.success());
    // only m mod ord(phi) is determined by the public key
    let m: BigUint = text(&o).trim().parse().unwrap();
    let pk = files::public_key_from_bytes(&fs::read(d.join("mor_pk.json")).unwrap()).unwrap();
    let ord = automorphism_order(&pk.params, &pk.phi).unwrap();
    assert!(m < ord);
    assert_eq!(m, BigUint::from(123456u32) % &ord);
    assert_eq!(pk.phi.pow(&pk.params, &m), pk.phi_m);
}

#[test]
fn selftest_output_and_exit() {
    let dir = tempdir().unwrap();
    let o = mor(dir.path(), &["selftest-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o);
    assert!(out.contains("576^65 mod 1297 = 450 : PASS"));
    assert!(out.contains("recovered m = 65 : PASS"));
    assert_eq!(
        out.lines().filter(|l| l.ends_with(": PASS")).count(),
        out.lines().count()
    );
}

#[test]
fn bad_input_files_exit_two() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    assert!(
        mor(d, &["keygen", "--p", "1297", "--n", "4", "--seed", "1"])
            .status
            .success()
    );
    let pk = fs::read(d.join("mor_pk.json")).unwrap();
    fs::write(d.join("trunc.json"), &pk[..pk.len() / 2]).unwrap();
    fs::write(
        d.join("v9.json"),
        String::from_utf8(pk.clone())
            .unwrap()
            .replace("\"version\":1", "\"version\":9"),
    )
    .unwrap();
    fs::write(d.join("msg.bin"), b"x").unwrap();

    for pk_file in ["trunc.json", "v9.json", "missing.json"] {
        let o = mor(
            d,
            &[
                "encrypt", "--pk", pk_file, "--in", "msg.bin", "--out", "ct.json",
            ],
        );
        assert_eq!(o.status.code(), Some(2), "{pk_file}");
        assert!(!o.stderr.is_empty());
        let o = mor(d, &["attack", "--pk", pk_file]);
        assert_eq!(o.status.code(), Some(2), "{pk_file}");
    }
    let o = mor(
        d,
        &[
            "decrypt",
            "--sk",
            "mor_sk.json",
            "--ct",
            "trunc.json",
            "--out",
            "x",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn attack_on_inconsistent_key_exits_three() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    assert!(mor(
        d,
        &["keygen", "--p", "7", "--n", "3", "--seed", "1", "--pk", "a.json"]
    )
    .status
    .success());
    assert!(mor(
        d,
        &["keygen", "--p", "7", "--n", "3", "--seed", "2", "--pk", "b.json"]
    )
    .status
    .success());
    // phi from one key, phi_m from another
    let a: serde_json::Value =
        serde_json::from_slice(&fs::read(d.join("a.json")).unwrap()).unwrap();
    let b: serde_json::Value =
        serde_json::from_slice(&fs::read(d.join("b.json")).unwrap()).unwrap();
    let mut mixed = a.clone();
    mixed["phi_m"] = b["phi_m"].clone();
    fs::write(d.join("mixed.json"), serde_json::to_vec(&mixed).unwrap()).unwrap();
    let o = mor(d, &["attack", "--pk", "mixed.json"]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    assert_eq!(mor(d, &[]).status.code(), Some(1));
    assert_eq!(mor(d, &["keygen", "--p", "1297"]).status.code(), Some(1));
    assert_eq!(
        mor(d, &["keygen", "--p", "5", "--n", "5"]).status.code(),
        Some(1)
    );
    assert_eq!(mor(d, &["bench", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(mor(d, &["--help"]).status.code(), Some(0));
}

#[test]
fn bench_writes_csv() {
    let dir = tempdir().unwrap();
    let d = dir.path();
    let o = mor(
        d,
        &[
            "bench",
            "--sizes",
            "2:1297,3:2:2",
            "--trials",
            "1",
            "--out",
            "b.csv",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(d.join("b.csv")).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "n,q,op,trials,median_ns");
    assert_eq!(lines.len(), 13);
    assert!(lines[7].starts_with("3,4,keygen,1,"));
}
