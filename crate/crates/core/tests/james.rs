use hopfcert::gfp::{GradedVectorSpace, Prime};
use hopfcert::james::{
    fiber_tower, main_theorem_certificate, relative_james_homology, skeleton_index, CertificateInput, JamesError, Space,
};
use serde_json::json;

#[test]
fn tower_cells_match_james_homology() {
    let p = Prime::new(2).unwrap();
    for n in 2..=6 {
        for k in 0..=3 {
            let tower = fiber_tower(n, k, 60).unwrap();
            let h = relative_james_homology(
                &GradedVectorSpace::sphere(n + 1, "a", p),
                &GradedVectorSpace::sphere(n + k + 1, "b", p),
                tower.f.top_dim().unwrap(),
            )
            .unwrap();
            assert_eq!(h.support(), tower.f.dims(), "(n, k) = ({n}, {k})");
        }
    }
}

#[test]
fn skeleton_indices_match_the_skeleta() {
    for n in 2..=6 {
        for k in 0..=3 {
            assert_eq!(skeleton_index(n + k + 1, n + 1, 2).unwrap().reconciled, 3 * n + 2 * k + 2);
            assert_eq!(skeleton_index(n + k + 1, n + 1, 3).unwrap().reconciled, 4 * n + 3 * k + 3);
            let tower = fiber_tower(n, k, 0).unwrap();
            assert_eq!(tower.f2.top_dim().unwrap(), 2 * n + k + 2);
            assert_eq!(tower.f3.top_dim().unwrap(), 3 * n + 2 * k + 3);
        }
    }
}

#[test]
fn certificates_pass_across_the_admissible_grid() {
    for n in 2..=6 {
        for k in 0..=3 {
            for p in [2u32, 5, 7] {
                let input = CertificateInput::new(n, k, p);
                match main_theorem_certificate(&input) {
                    Ok(cert) => {
                        assert!(cert.passed(), "(n, k, p) = ({n}, {k}, {p})\n{}", cert.to_text());
                        let chain = &cert.find("factorization chain").unwrap().data["chain"];
                        assert_eq!(chain[0], json!(Space::Sphere(3 * n + 2 * k + 2).to_string()));
                        let l3 = cert.find("L3").unwrap();
                        assert_eq!(l3.data["cells"], json!([3 * n + k + 1, 3 * n + 2 * k + 2]));
                    }
                    Err(JamesError::Hypothesis(_)) => assert!(p >= 5 && (n + k) % 2 == 0),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }
}

#[test]
fn certificate_for_two_one() {
    let cert = main_theorem_certificate(&CertificateInput::new(2, 1, 2)).unwrap();
    let chain = &cert.find("factorization chain").unwrap().data;
    assert_eq!(chain["chain"], json!(["S^10", "S^9", "G", "F2"]));
    assert_eq!(chain["F2"], json!("S^3 ∪ e^7"));
}

#[test]
fn gates_reject_three_and_even_sums() {
    assert!(matches!(main_theorem_certificate(&CertificateInput::new(4, 1, 3)), Err(JamesError::Hypothesis(_))));
    assert!(matches!(main_theorem_certificate(&CertificateInput::new(4, 2, 5)), Err(JamesError::Hypothesis(_))));
}
