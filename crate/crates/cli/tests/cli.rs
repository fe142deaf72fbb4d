use std::path::PathBuf;
use std::process::{Command, Output};

use theta_kit::cellular::{circle, TruncatedPresheaf};
use theta_kit::spectra::KanSpectrumWindow;
use theta_kit::theta::{Cell, ThetaMap};

fn theta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn decompose() {
    let o = theta(&["decompose", "[0 0]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "sum: A(1,0,1)\n");
    assert_eq!(stdout(&theta(&["decompose", "[[0] [0]]"])), "sum: A(2,0,2)\n");
    assert_eq!(stdout(&theta(&["decompose", "A(2,1,3)", "--format", "lines"])), "sum\tA(2,1,3)\n");
}

#[test]
fn hom_listing_and_count() {
    let (s, t) = (Cell::globe(1), Cell::globe(2));
    let want = ThetaMap::hom_count(&s, &t);
    assert_eq!(stdout(&theta(&["hom", "g1", "g2", "--count"])), format!("count: {want}\n"));
    let o = stdout(&theta(&["hom", "g1", "g2", "--format", "lines"]));
    let maps: Vec<ThetaMap> = o.lines().filter_map(|l| l.strip_prefix("map\t")).map(|l| ThetaMap::parse_full(l).unwrap()).collect();
    assert_eq!(maps, ThetaMap::hom(&s, &t));
}

#[test]
fn map_verbs() {
    let o = stdout(&theta(&["compose", "g1 -> 0 : {f=(0 0); c=[[]]}", "0 -> g1 : {f=(1); c=[]}"]));
    assert_eq!(o, "map: 0 -> 0 : {f=(0); c=[]}\n");

    let o = stdout(&theta(&["factor", "[0 0] -> [0 0 0] : {f=(0 0 3); c=[[] [{f=(0); c=[]} {f=(0); c=[]} {f=(0); c=[]}]]}"]));
    assert!(o.starts_with("class: mixed\nnegative: [0 0] -> [0] : "));
    assert_eq!(o.lines().filter(|l| l.starts_with("coface: ")).count(), 2);

    let o = stdout(&theta(&["pullback", "0 -> [0] : {f=(0); c=[]}", "0 -> [0] : {f=(1); c=[]}"]));
    assert_eq!(o, "cell: empty\n");
    let d0 = "[0] -> [0 0] : {f=(1 2); c=[[{f=(0); c=[]}]]}";
    let o = stdout(&theta(&["pullback", d0, d0]));
    assert!(o.starts_with("cell: [0]\n"));

    assert_eq!(stdout(&theta(&["shift", "[0 0]"])), "cell: [[0 0]]\n");
    assert_eq!(stdout(&theta(&["shift", "--unshift", "[[0 0]]"])), "cell: [0 0]\n");
    let o = stdout(&theta(&["shift", "0 -> [0] : {f=(1); c=[]}"]));
    assert_eq!(o, "map: [0] -> [[0]] : {f=(0 1); c=[[{f=(1); c=[]}]]}\n");

    let o = stdout(&theta(&["collapse", "1", "[[0] 0]"]));
    assert!(o.starts_with("cell: [0 0]\nc: "));
    let o = stdout(&theta(&["eh", "g1"]));
    assert!(o.starts_with("map: [[0]] -> [0] : "));
}

#[test]
fn exit_codes() {
    let o = theta(&["decompose", "[0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(theta(&["shift", "--unshift", "[0 0]"]).status.code(), Some(3));
    assert_eq!(theta(&["compose", "0 -> 0 : {f=(0); c=[]}", "0 -> [0] : {f=(1); c=[]}"]).status.code(), Some(3));
    assert_eq!(theta(&["suspend", "/nonexistent/fixture"]).status.code(), Some(2));
    assert_eq!(theta(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn presheaf_verbs_round_trip() {
    let x: TruncatedPresheaf = std::fs::read_to_string(fixture("circle.txt")).unwrap().parse().unwrap();
    assert_eq!(x, circle(1));

    let o = theta(&["suspend", &fixture("circle.txt")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let s: TruncatedPresheaf = text.parse().unwrap();
    assert_eq!(s.to_string(), text);
    assert_eq!(s.bound(), 2);
    assert_eq!(stdout(&theta(&["suspend", &fixture("circle.txt")])), text);

    let dir = std::env::temp_dir().join(format!("theta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s2.txt");
    std::fs::write(&path, &text).unwrap();
    let o = stdout(&theta(&["omega", path.to_str().unwrap()]));
    let l: TruncatedPresheaf = o.parse().unwrap();
    assert_eq!(l.bound(), 1);

    let o = theta(&["smash", &fixture("circle.txt"), &fixture("circle.txt")]);
    assert!(o.status.success());
    stdout(&o).parse::<TruncatedPresheaf>().unwrap();

    let o = stdout(&theta(&["check-mono", "g2", "--format", "lines"]));
    assert_eq!(o, "mono\ttrue\nsuspension-mono\ttrue\n");
    let o = stdout(&theta(&["check-mono", "g1 -> 0 : {f=(0 0); c=[[]]}"]));
    assert!(o.starts_with("mono: false\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn spectra_verbs() {
    let o = theta(&["stabilize", "sphere:0", "--depth", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let w: KanSpectrumWindow = text.parse().unwrap();
    assert_eq!(w.to_string(), text);
    assert_eq!((w.z_min, w.z_max), (-3, 0));

    let dir = std::env::temp_dir().join(format!("theta-cli-window-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.txt");
    std::fs::write(&path, &text).unwrap();
    let o = theta(&["check-spectrum", path.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("holds\ttrue\n"));
    let o = theta(&["check-spectrum", path.to_str().unwrap(), "--opbound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not refuted 1"));
    std::fs::remove_dir_all(dir).unwrap();

    let o = theta(&["check-spectrum", &fixture("unstable.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violator: degree 1 cell 1"));

    let o = stdout(&theta(&["stabilize", &fixture("circle.txt"), "--depth", "2", "--format", "lines"]));
    assert_eq!(o, "level\t0 (1, 0)\nlevel\t1 (1, 0)\nlevel\t2 (1, 0)\n");
}

#[test]
fn verify_suites() {
    let o = theta(&["verify", "gamma"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));

    let o = theta(&["verify", "shift", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let fail = out.lines().find(|l| l.starts_with("fail\t")).expect("E naturality is reported");
    assert!(fail.contains("not natural along 0 -> [0] : {f=(0); c=[]}"));
}
