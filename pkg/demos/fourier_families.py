"""Fourier matrices and families of unipotent characters.

Walks from the small groups Gamma to the constants M_Phi that feed the
multiplicity bound.
"""

from multbound.fourier import c_phi_set, families_of_type, fourier_matrix, m_set, positive_row


def show(F):
    width = max(len(str(x)) for row in F.as_fractions() for x in row) + 1
    for label, row in zip(F.labels, F.as_fractions()):
        print(f"  {label:>7} " + "".join(f"{str(x):>{width}}" for x in row))


print("|M(Gamma)| for Gamma = 1, S2, S3, S4, S5:", [len(m_set(g)) for g in ["trivial", "S2", "S3", "S4", "S5"]])

print("\nFourier matrix for S2")
show(fourier_matrix("S2"))

print("\nFourier matrix for S3 (the G2 family of 8)")
show(fourier_matrix("S3"))

for name in ["B2", "G2", "B3", "D4"]:
    print(f"\n{name}:")
    for fam in families_of_type(name):
        if fam.size == 1:
            continue
        phi, row = positive_row(fam, fam.special)
        print(f"  family {fam.family_id} (Gamma={fam.gamma}):", ", ".join(m.label for m in fam.members))
        print(f"    positive row at {phi}:", [str(g) for g in row])
    print("  C_Phi =", sorted(str(g) for g in c_phi_set(name)))
