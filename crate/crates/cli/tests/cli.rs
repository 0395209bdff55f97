use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn cubicpm(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubicpm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubicpm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn k4_pipeline() {
    let g = cubicpm(&["gen", "--named", "k4"], "");
    assert!(g.status.success());
    let m = cubicpm(&["match", "-", "--check"], &stdout(&g));
    assert_eq!(m.status.code(), Some(0));
    let text = stdout(&m);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "2");
    assert_eq!(lines.len(), 3);
    assert!(!lines[1..].contains(&"0"));

    let gp = scratch("k4.txt", &stdout(&g));
    let mp = scratch("k4.m", &text);
    let v = cubicpm(&["verify", "--graph", gp.to_str().unwrap(), "--matching", mp.to_str().unwrap()], "");
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn random_pipeline_with_trace() {
    let g = cubicpm(&["gen", "--n", "1024", "--seed", "7"], "");
    let m = cubicpm(&["match", "-", "--check", "--trace"], &stdout(&g));
    assert_eq!(m.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&m.stderr).lines().count(), 511);
}

#[test]
fn exit_codes() {
    let g = stdout(&cubicpm(&["gen", "--named", "theta"], ""));
    let gp = scratch("theta.txt", &g);
    let bad = scratch("theta.m", "1\n0\n1\n");
    let wrong = scratch("theta.wrong", "0\n");
    let gp = gp.to_str().unwrap();
    let v = cubicpm(&["verify", "--graph", gp, "--matching", wrong.to_str().unwrap()], "");
    assert_eq!(v.status.code(), Some(1));
    let v = cubicpm(&["verify", "--graph", gp, "--matching", bad.to_str().unwrap()], "");
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stderr).contains("line 3"));

    let m = cubicpm(&["match", "-"], "2 3\n0 1\n0 1\nzz\n");
    assert_eq!(m.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&m.stderr).contains("line 4"));
    let disconnected = "4 6\n0 1\n0 1\n0 1\n2 3\n2 3\n2 3\n";
    assert_eq!(cubicpm(&["match", "-"], disconnected).status.code(), Some(3));
    assert_eq!(cubicpm(&["gen", "--n", "7"], "").status.code(), Some(2));
}

#[test]
fn oracle_and_apps_commands() {
    let g = stdout(&cubicpm(&["gen", "--named", "petersen"], ""));
    let gp = scratch("petersen.txt", &g);
    let gp = gp.to_str().unwrap();
    let b = cubicpm(&["oracle", "bridges", gp], "");
    assert_eq!(stdout(&b), "0\n");
    let f = cubicpm(&["oracle", "frink", gp], "");
    assert_eq!(f.status.code(), Some(0));
    assert_eq!(stdout(&f).lines().count(), 16);
    let naive = cubicpm(&["oracle", "naive", gp], "");
    assert!(stdout(&naive).starts_with("5\n"));
    let mp = scratch("petersen.m", &stdout(&naive));
    let alt = cubicpm(&["oracle", "altcycle", "--graph", gp, "--matching", mp.to_str().unwrap(), "--edge", "3"], "");
    assert_eq!(alt.status.code(), Some(0));
    assert!(stdout(&alt).starts_with("3 "));

    let tf = cubicpm(&["apps", "two-factor", "--graph", gp], "");
    assert_eq!(stdout(&tf).lines().count(), 2);
    let tour = cubicpm(&["apps", "tour", "--graph", gp], "");
    assert_eq!(stdout(&tour).split_whitespace().count(), 13);
    let p4 = cubicpm(&["apps", "p4", "--graph", gp, "--matching", mp.to_str().unwrap()], "");
    assert_eq!(stdout(&p4).lines().count(), 5);

    let theta = stdout(&cubicpm(&["gen", "--named", "theta"], ""));
    let tp = scratch("theta2.txt", &theta);
    assert_eq!(cubicpm(&["apps", "tour", "--graph", tp.to_str().unwrap()], "").status.code(), Some(2));
}

#[test]
fn bench_header_and_rows() {
    let b = cubicpm(&["bench", "--min-n", "64", "--max-n", "256", "--seeds", "2", "--jobs", "2"], "");
    assert!(b.status.success());
    let text = stdout(&b);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n\tseed\twall_s\tops\treductions\tswaps");
    let keys: Vec<(&str, &str)> = lines[1..].iter().map(|l| {
        let f: Vec<&str> = l.split('\t').collect();
        (f[0], f[1])
    }).collect();
    assert_eq!(keys, [("64", "0"), ("64", "1"), ("128", "0"), ("128", "1"), ("256", "0"), ("256", "1")]);
}
