# # A function without fixed points
#
# max{x1 - x2 - x3, x1 + 4, x1 + x2 + x3, -x1 + x2 + 2} is unbounded below.
# Coordinate minimization with the unique rule never stops: after the first
# sweep every later sweep lowers all four values by exactly one.

# In[1]:

from pwamin import Outcome, SolverState, run, unique_update
from pwamin.instances import example4, example5

f = example4().function
state = SolverState.start(f, (0, 0, 0))
for j in range(3):
    state = unique_update(state, j)
    print(f"j={j + 1}", state.x, state.y)


# The solver notices the constant translation and reports suspected divergence.

# In[2]:

out = run(f, (0, 0, 0))
print(out.status.value, "after", out.cycles, "cycles:", out.message)
print([int(v) for v in out.trace.max_y])


# Adding the constant zero piece makes the function bounded, but the other
# four values still sink while the constant one stays put.

# In[3]:

g = example5().function
out = run(g, (0, 0, 0), max_cycles=200)
print(out.status.value, out.state.y)


# Writing the trace gives one row per coordinate update plus one per cycle.

# In[4]:

print(run(f, (0, 0, 0), max_cycles=2).trace.to_csv())
