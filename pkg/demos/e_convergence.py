# # The violation measure e(y) on random instances
#
# e(y) is the smallest gap eps for which the rows within eps of the maximum
# carry a nonempty consistent sign set. On instances whose rows have 0 in the
# relative interior of their hull, e falls toward 0 as the sweeps go on.

# In[1]:

from pwamin import run
from pwamin.instances import generate_random
from pwamin.oracle import contains_origin_rint_conv

for seed in range(5):
    f = generate_random(4, 8, seed, "rint")
    assert contains_origin_rint_conv(f.A)[0]
    out = run(f.with_numeric("float"), None, max_cycles=10_000, tol=0, stop_when_e_below=1e-8)
    es = [row[3] for row in out.trace.cycles]
    print(f"seed {seed}: {out.cycles:4d} cycles, e from {es[0]:.3g} to {es[-1]:.2g}")


# The maximum never goes up along the way.

# In[2]:

maxes = out.trace.max_y
print(all(b <= a for a, b in zip(maxes, maxes[1:])), maxes[0], maxes[-1])
