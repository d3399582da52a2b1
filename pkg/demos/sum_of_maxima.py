# # Sums of maxima
#
# A sum of G maxima becomes a single maximum after adding auxiliary
# variables u with sum(u) = 0: minimizing over u turns the sum into G times
# the mean of the group maxima.

# In[1]:

from fractions import Fraction

from pwamin.instances import abs_pair, example1_doubled
from pwamin.oracle import solve_min_lp
from pwamin.summax import final_x, interlaced_minimize, lift, scaled_sum_as_minmax

print(scaled_sum_as_minmax([1, 3]))
print(scaled_sum_as_minmax([0, 0, 3]))


# |x| + |x - 1| lifted to one max over (x, u1).

# In[2]:

s = abs_pair().function
lifted = lift(s)
print(lifted.g.A, lifted.g.b)
res = solve_min_lp(lifted.g)
print("minimum of the sum:", len(s.groups) * res.value)


# Interlacing alternates the closed-form u with a sweep over x.

# In[3]:

out = interlaced_minimize(s, (3,))
print(out.status.value, final_x(out, s), s(final_x(out, s)))

d = example1_doubled()
out = interlaced_minimize(d.function, d.x0, max_cycles=60)
print(out.status.value, float(d.function(final_x(out, d.function))))


# Interlacing can also stall. Here it stops at objective 6 while the minimum
# is 21/5.

# In[4]:

from pwamin.summax import SumMaxFunction

stuck = SumMaxFunction([
    [([1], 0), ([-1], 1), ([-1], 3)],
    [([-2], -2), ([3], 1)],
    [([1], 2)],
])
out = interlaced_minimize(stuck, None)
print(out.status.value, final_x(out, stuck), stuck(final_x(out, stuck)))
print(len(stuck.groups) * solve_min_lp(lift(stuck).g).value, Fraction(21, 5))
