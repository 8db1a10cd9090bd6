//! Algebra homomorphisms of polynomial algebras: each one is a pullback by
//! the polynomial it sends z to. Characters recover points, and the audit
//! flags maps that are linear but not multiplicative, or additive but not
//! linear.

use holokit::bers::{character_point, morphism_audit, AlgebraHom, AuditTrials, CharacterTable, CoefficientKind, Poly};
use num_complex::Complex64 as C;

fn show(p: &Poly) -> String {
    let terms: Vec<String> = p.coefficients().iter().enumerate().map(|(k, c)| format!("({c})z^{k}")).collect();
    terms.join(" + ")
}

fn main() -> holokit::Result<()> {
    let point = C::new(0.3, -1.2);
    let chi = character_point(&CharacterTable::evaluation(point, 8)?);
    println!("evaluation at {point}: recovered {} (consistent: {})", chi.c, chi.consistent);

    let h = Poly::new(vec![C::new(1.0, 0.0), C::new(0.0, 2.0), C::new(-1.0, 0.0)])?;
    let phi = AlgebraHom::from_map(h.clone());
    let trials = AuditTrials { count: 50, seed: 3, degree: 4, kind: CoefficientKind::Integer };
    let audit = morphism_audit(|f| phi.pullback(f), &trials)?;
    println!(
        "pullback by h = {}: homomorphism {}, recovered h = {}",
        show(&h),
        audit.is_homomorphism,
        show(&audit.recovered_h)
    );

    let trials = AuditTrials::new(50, 3);
    let square = morphism_audit(|f| f.mul(f), &trials)?;
    println!(
        "f -> f^2: additive defect {:.3}, homomorphism {}",
        square.additive_defect, square.is_homomorphism
    );
    let conj = morphism_audit(|f| Ok(f.conj_coefficients()), &trials)?;
    println!(
        "coefficient conjugation: scalar defect {:.3}, homomorphism {}",
        conj.scalar_defect, conj.is_homomorphism
    );
    Ok(())
}
