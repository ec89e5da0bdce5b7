"""The separation that makes the ellipse certificate meaningful.

The recurrence identities tie consecutive moments together for *any*
positive even rho - they hold for perturbed bodies just as well, with
residuals at round-off level.  What fails for a non-ellipse is only the
polynomiality of the moments: the membership test picks up the forbidden
frequency immediately.  Certification therefore rests on the membership
verdict, with the residuals confirming the moments are honest.
"""

from radonrange import TangentialData, disk, perturb, reconstruct, synthesize_moments

print("eps      forbidden/total   membership   max residual / scale")
for eps in (0.0, 0.01, 0.05, 0.1):
    body = disk(1) if eps == 0.0 else perturb(disk(1), eps, 4)
    data = TangentialData(body, (1,))
    report = reconstruct(synthesize_moments(data, 8), 1)
    verdict = report.quadratic_verdict
    ratio = verdict.forbidden_energy / verdict.total_energy
    print(
        f"{eps:<8} {ratio:<17.3e} {'pass' if verdict.verdict else 'fail':<12} "
        f"{report.relative_residual:.3e}"
    )
print()
print("The residual column stays at round-off for every eps; only the")
print("membership column separates the disk from its perturbations.")
