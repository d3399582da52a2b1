# # Coordinate minimization of a max of affine functions
#
# f(x) = max{x2 - x3, x3 - x1, x1 - x2} has minimum 0 on the line x1 = x2 = x3.
# Two update rules pick the new value of a coordinate.

# In[1]:

from pwamin import UpdateRule, run
from pwamin.instances import example1

inst = example1()
f = inst.function
print("start", inst.x0, "f =", f(inst.x0))


# The proximal rule keeps the current value whenever it already minimizes
# along the coordinate. From (2, 1, 0) no coordinate can improve, so the run
# stops at once, well above the minimum.

# In[2]:

out = run(f, inst.x0, UpdateRule.PROXIMAL)
print(out.status.value, out.state.x, "f =", max(out.state.y))


# The unique rule only balances the rows that depend on the coordinate. It
# keeps moving and drives f to 0.

# In[3]:

out = run(f, inst.x0, UpdateRule.UNIQUE, max_cycles=30)
for cycle, _, max_y, e_y, step in out.trace.cycles[:6]:
    print(cycle, float(max_y), e_y and float(e_y))
print("after", out.cycles, "cycles: f =", float(max(out.state.y)))


# In values y = Ax + b each update averages two entries, so y tends to the
# mean of its starting entries.

# In[4]:

from pwamin.coordinate import iterate_cycles

y0 = (4, -1, 3)
print([float(v) for v in iterate_cycles(f, y0, 25)], sum(y0) / 3)
