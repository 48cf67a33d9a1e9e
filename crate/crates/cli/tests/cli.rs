use std::process::{Command, Output};

fn torelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli"))
        .args(args)
        .output()
        .expect("run the torelli binary")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = torelli(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const EXAMPLE: &str = "x1 y2 x2 x3^-1 y5 y1^-2 x1 x2^-1 y4^3 x3^-1";

#[test]
fn gamma_on_the_worked_example() {
    let v = json(&["gamma", "--g", "4", "--b", "6", EXAMPLE]);
    assert_eq!(
        v,
        serde_json::json!({"member": true, "profile": {"O": [1, 1, 1, 0], "E": [1, 1, 1, 0]}})
    );
    let text = torelli(&["gamma", "--g", "4", "--b", "6", EXAMPLE]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("member: true"));
}

#[test]
fn gamma_odd_projection() {
    let v = json(&["gamma", "--g", "3", "--b", "1", "x1"]);
    assert_eq!(v["member"], false);
    assert!(v["profile"].is_null());
}

#[test]
fn nf_json() {
    let v = json(&["nf", "--g", "3", "--b", "2", "x1 x2"]);
    assert_eq!(v, serde_json::json!({"v": [1, -1], "parity": 0}));
}

#[test]
fn act_identity() {
    let v = json(&["act", "--g", "5", "--b", "2", "1"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_i64().unwrap(), i64::from(r == c));
        }
    }
    assert_eq!(v["basis"][5], "d1");
}

#[test]
fn act_rejects_odd_words() {
    let out = torelli(&["act", "--g", "3", "--b", "1", "x1"]);
    assert!(!out.status.success());
}

#[test]
fn certify_then_verify() {
    let dir = std::env::temp_dir().join(format!("torelli-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let cert = json(&["certify", "--g", "3", "--b", "1", "x1 x2 x2 x1"]);
    assert_eq!(cert[0]["relator"]["family"], "PairCommutator");
    std::fs::write(&path, cert.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let ok = torelli(&["verify-cert", "--g", "3", "--b", "1", p, "x1 x2 x2 x1"]);
    assert!(ok.status.success());
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "true");
    let bad = torelli(&["verify-cert", "--g", "3", "--b", "1", p, "x1 x1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&bad.stdout).trim(), "false");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certify_rejects_non_members() {
    let out = torelli(&["certify", "--g", "3", "--b", "1", "x1 x2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("x1 x2"));
}

#[test]
fn rs_presentations() {
    let free = json(&["rs", "--g", "4", "--b", "2"]);
    assert_eq!(free["generators"].as_array().unwrap().len(), 9);
    assert!(free["relators"].as_array().unwrap().is_empty());
    let quotient = json(&["rs", "--g", "4", "--b", "2", "--with-relators"]);
    // 3 + 1 + 1 + 4 + 3 + 1 + 4 across the six families
    assert_eq!(quotient["relators"].as_array().unwrap().len(), 17);
}

#[test]
fn catalog_json() {
    let v = json(&["catalog", "--g", "5", "--b", "3"]);
    assert_eq!(v["generators"][6], "t_sigma(1,2)");
    let closed = json(&["catalog", "--g", "4", "--b", "0"]);
    assert_eq!(
        closed["generators"],
        serde_json::json!(["t_alpha", "t_beta_betaprime", "t_gamma"])
    );
    assert!(!torelli(&["catalog", "--g", "3", "--b", "1"])
        .status
        .success());
}

#[test]
fn bad_words_fail() {
    let out = torelli(&["gamma", "--g", "2", "--b", "1", "x3"]);
    assert!(!out.status.success());
    let out = torelli(&["gamma", "--g", "2", "--b", "1", "x1^"]);
    assert!(!out.status.success());
}

#[test]
fn suite_json_is_stable() {
    let a = json(&["suite", "--g", "4", "--b", "2", "--seed", "3"]);
    let b = json(&["suite", "--g", "4", "--b", "2", "--seed", "3"]);
    assert_eq!(a, b);
    assert_eq!(a["checks"].as_array().unwrap().len(), 9);
    assert!(a["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn suite_skips_equivalences_below_genus_four() {
    let v = json(&["suite", "--g", "3", "--b", "2"]);
    let six = &v["checks"][5];
    assert_eq!(six["status"], "skip");
}
