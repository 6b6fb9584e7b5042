use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn locus(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_locus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn axiom_is_accepted() {
    let src = std::fs::read_to_string(fixture("fixtures/axiom.net")).unwrap();
    for c in ["dr", "mix", "cp", "aj", "parse-weak", "parse-strong"] {
        let o = locus(&["check", c], &src);
        assert_eq!(o.status.code(), Some(0), "{c}");
        assert_eq!(json(&o)["accepted"], true);
    }
}

#[test]
fn cycle_is_rejected_with_its_cycle() {
    let path = fixture("fixtures/cycle.net");
    let o = locus(&["check", "dr", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    let golden = std::fs::read(fixture("golden/check_dr_cycle.json")).unwrap();
    assert_eq!(o.stdout, golden);
    let v = json(&o);
    assert_eq!(v["witness"]["kind"], "cycle");
    assert_eq!(v["witness"]["cycle"].as_array().unwrap().len(), 4);
    let o = locus(&["sequentialize", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ram_against_dai_normalizes_to_dai() {
    let path = fixture("fixtures/ram_dai.net");
    let o = locus(&["normalize", "--strong", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["chronicles"], serde_json::json!(["dai"]));
    let o = locus(&["orthogonal", "--token", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["token"]["outcome"]["kind"], "daimon");
}

#[test]
fn parse_errors_exit_2_with_a_position() {
    let o = locus(&["check", "dr"], "tree 0: C @ {.}\ntree 1: (C * @ {.}\n");
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");
    assert_eq!(v["line"], 2);
    let o = locus(&["normalize"], "(+ . {1} (- 1 ({1} -> dai)");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_rendering_follows_json() {
    let path = fixture("fixtures/cycle.net");
    let o = locus(&["--format", "text", "check", "dr", path.to_str().unwrap()], "");
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("accepted: false\ncriterion: dr\nwitness:\n"), "{text}");
    assert!(text.contains("    - class {0:1, 0:2}\n"));
}

#[test]
fn corpora_are_stable() {
    let o = locus(&["gen", "--seed", "1", "--count", "20", "--leaves", "10", "--cuts", "--perturb", "0.5"], "");
    assert_eq!(json(&o)["digest"], "9ece8b0455a1fe0d9bc10189c4de830151dcff37821364be3136813af9d71233");
    let o = locus(&["gen", "--mode", "proof", "--seed", "100", "--count", "50"], "");
    assert_eq!(json(&o)["digest"], "95968765bff92d9fa429ecb01ea033872c8d029c398ee9fae8cc9c9a525a9ecf");
}

#[test]
fn generated_structures_round_trip_through_check() {
    let o = locus(&["gen", "--mode", "proof", "--seed", "3", "--count", "10"], "");
    for s in json(&o)["structures"].as_array().unwrap() {
        let src = s["structure"].as_str().unwrap();
        let dr = locus(&["check", "dr"], src).status.code();
        let seq = locus(&["sequentialize"], src).status.code();
        assert_eq!(dr, seq, "{src}");
    }
}

#[test]
fn cut_normalize_traces_steps() {
    let src = "tree 0: C @ {.}\ntree 1: C^ @ {.}\ntree 2: C @ {.}\ntree 3: C^ @ {.}\nclass {0:., 1:.}\nclass {2:., 3:.}\ncut {1,2}\n";
    let o = locus(&["cut-normalize", "--trace"], src);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["cut_free"], true);
    assert_eq!(v["steps"], 1);
}

#[test]
fn designs_and_terms() {
    let o = locus(&["design", "named", "fax", "--address", "1", "--to", "2", "--alphabet", "{1}"], "");
    let fax = json(&o)["design"].as_str().unwrap().to_string();
    assert_eq!(fax, "(- 1 ({1} -> (+ 2 {1} (- 2.1 ({1} -> (+ 1.1 {1} (- 1.1.1)))))))");
    let o = locus(&["design", "infer-base"], &fax);
    assert_eq!(json(&o)["base"], "1 |- 2");
    let o = locus(&["design", "check"], &format!("{fax} : 1 |- 2 3"));
    assert_eq!(o.status.code(), Some(0));
    let o = locus(&["design", "compare", "--order", "stable"], "omega dai");
    assert_eq!(o.status.code(), Some(0));
    let o = locus(&["design", "compare", "--order", "stable"], "dai omega");
    assert_eq!(o.status.code(), Some(1));
    let o = locus(&["lambda", "to-term"], &fax);
    assert_eq!(json(&o)["term"], "\\{x0}.v2{\\{x1}.x0{{}}}");
    let o = locus(&["lambda", "to-slice", "--base", "1 |- 2"], "\\{a}.v2{\\{b}.a{{}}}");
    assert_eq!(json(&o)["design"], fax.as_str());
    let o = locus(&["lambda", "to-slice", "--base", "1 |- 2"], "\\{a}.q{}");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reason"], "unbound variable q");
}

#[test]
fn behaviours() {
    let o = locus(&["behaviour", "directory"], "(- . ({1} -> dai))");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["directory"], v["dual_directory"]);
    let o = locus(&["behaviour", "plus", "--alphabet", "{1} {2}"], "(+ . {1})\n---\n(+ . {2})\n");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = locus(&["behaviour", "with", "--alphabet", "{1} {2}"], "(- . ({1} -> dai))\n---\n(- . ({2} -> dai))\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["member_count"], 1, "only the design with both daimons is in both");
    let o = locus(&["behaviour", "with"], "(- . ({1} -> dai))\n---\n(- . ({1} -> dai))\n");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reason"], "directories share {1}");
    let o = locus(&["behaviour", "delocate", "--k", "2", "--offset", "1"], "(+ . {1 2})");
    assert_eq!(json(&o)["designs"][0], "(+ . {3 5} (- 3) (- 5))");
}

#[test]
fn explore_reads_choices() {
    let path = fixture("fixtures/open.net");
    let o = locus(&["explore", path.to_str().unwrap(), "--alphabet", "{1} {2}"], "3 {1}\n2 {1}\n");
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("illegal choice; offered: 1 {1}, 1 {2}, 2 {1}, 2 {2}"), "{err}");
    // one state per prompt, then the final one
    let out = String::from_utf8(o.stdout).unwrap();
    let last: Value = serde_json::Deserializer::from_str(&out).into_iter::<Value>().last().unwrap().unwrap();
    assert_eq!(last["outcome"]["kind"], "daimon");
    assert_eq!(last["offered"], serde_json::json!([]));
    assert_eq!(last["q"], serde_json::json!(["(+ 2 {1 2})", "(- 2.2 {1})"]));
}
