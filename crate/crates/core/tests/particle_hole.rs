use fockdual::ph::{bell_square_check, nucleon_check, perj_conjugation, ph_check, product_conjugation};
use fockdual::{Check, ShellKinds, ShellParams};

fn outcome(checks: &[Check], name: &str) -> bool {
    checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("missing {name}")).pass
}

#[test]
fn l1_identities() {
    let c = ph_check(1).unwrap();
    for name in [
        "angular_momentum_algebra",
        "Q_sl2_relations",
        "Q_commutes_S",
        "Qz_vacuum",
        "C1_commutes_L",
        "C1_is_rho_of_word",
        "C2_commutes_L_and_S",
        "C3_conjugation_relation",
        "F_C1_vacuum_equals_C1_F_vacuum",
        "C3_block_exponential",
        "perj_sum_equals_Qy",
        "sigma_pm_anticommute",
    ] {
        assert!(outcome(&c, name), "{name}");
    }
}

#[test]
fn quasispin_rotation_differs_from_c2_by_parity() {
    let c = ph_check(1).unwrap();
    let eq = c.iter().find(|x| x.name == "C3_equals_C2").unwrap();
    assert!(!eq.pass);
    assert_eq!(eq.detail.as_deref(), Some("C3 = C2·(−1)^N"));
}

#[test]
fn perj_needs_valid_j() {
    let sh = ShellParams::new(1, ShellKinds::Spin);
    assert!(perj_conjugation(&sh, 5).is_err());
    assert!(perj_conjugation(&sh, 3).is_ok());
}

#[test]
fn bell_square_sign() {
    for j2 in [1, 3, 5] {
        assert!(bell_square_check(j2).unwrap().pass);
    }
}

#[test]
fn nucleon_shell_commutes_with_spin_and_isospin() {
    let c = nucleon_check(1).unwrap();
    assert!(outcome(&c, "composed_commutes_S"));
    assert!(outcome(&c, "composed_commutes_T"));
}

#[test]
fn product_of_one_factor() {
    let sh = ShellParams::new(0, ShellKinds::Spin);
    let ops = fockdual::ph::conjugation_ops(&sh).unwrap();
    assert_eq!(product_conjugation(&[ops.c1.clone()], None).unwrap(), ops.c1);
}
