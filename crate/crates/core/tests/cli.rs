use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_factorforge"))
}

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name)
}

fn run(args: &[&std::ffi::OsStr]) -> Output {
    bin().args(args).output().unwrap()
}

fn os<P: AsRef<std::ffi::OsStr> + ?Sized>(p: &P) -> &std::ffi::OsStr {
    p.as_ref()
}

#[test]
fn factor_writes_factors_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fac");
    let o = run(&[os("factor"), sample("product.slp").as_os_str(), os("--out"), out.as_os_str(), os("--seed"), os("3")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stats = fs::read_to_string(out.join("result.txt")).unwrap();
    assert!(stats.contains("factors = 2"));
    assert!(stats.contains("rng_seed = 3"));
    // the written factors multiply back to the input, up to the recorded scale
    let (g, h) = (out.join("factor_0.slp"), out.join("factor_1.slp"));
    let o = run(&[os("verify"), sample("product.slp").as_os_str(), g.as_os_str(), h.as_os_str()]);
    let scale: u64 = stats
        .lines()
        .find_map(|l| l.strip_prefix("scale = "))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(o.status.code(), Some(if scale == 1 { 0 } else { 1 }));
}

#[test]
fn default_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.slp");
    fs::copy(sample("left.slp"), &input).unwrap();
    let o = run(&[os("factor"), input.as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("p.factors").join("factor_0.slp").exists());
}

#[test]
fn verify_exit_codes() {
    let (f, g, h) = (sample("product.slp"), sample("left.slp"), sample("right.slp"));
    assert_eq!(run(&[os("verify"), f.as_os_str(), g.as_os_str(), h.as_os_str()]).status.code(), Some(0));
    let o = run(&[os("verify"), f.as_os_str(), g.as_os_str(), g.as_os_str()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "mismatch");
}

#[test]
fn expand_eval_resultant() {
    let o = run(&[os("expand"), sample("right.slp").as_os_str()]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "x1*x2 + x3^2 + 2");
    let o = run(&[os("eval"), sample("left.slp").as_os_str(), os("--point"), os("1,2,-3")]);
    // 1 + (-3) + 1 = -1
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "2305843009213693950");
    let o = run(&[
        os("resultant"),
        sample("left.slp").as_os_str(),
        sample("right.slp").as_os_str(),
        os("--yvar"),
        os("3"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "x1^2 + x1*x2 + 2*x1 + 3");
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.slp");
    fs::write(&bad, "nvars 1\ng0 = input x1\ng1 = mul g0 g7\noutput g1\n").unwrap();
    let o = run(&[os("expand"), bad.as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&[os("expand"), dir.path().join("missing.slp").as_os_str()]).status.code(), Some(2));
    assert_eq!(run(&[os("frobnicate")]).status.code(), Some(2));
    let o = run(&[os("--prime"), os("12"), os("expand"), sample("left.slp").as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn prime_from_environment() {
    let o = bin()
        .env("FACTORFORGE_PRIME", "101")
        .args([os("eval"), sample("left.slp").as_os_str(), os("--point"), os("100,0,100")])
        .output()
        .unwrap();
    // 100 + 100 + 1 = 201 = 100 mod 101
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "100");
}
