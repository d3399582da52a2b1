# # Exact LP oracles
#
# Whether f = max(Ax + b) is bounded below comes down to 0 lying in the
# convex hull of the rows of A. An exact rational simplex decides that and
# returns the weights as a certificate.

# In[1]:

from pwamin.instances import example1, example4
from pwamin.oracle import contains_origin_conv, contains_origin_rint_conv, is_global_minimizer, solve_min_lp

f1, f4 = example1().function, example4().function
print(contains_origin_conv(f1.A))
print(contains_origin_conv(f4.A))


# With strictly positive weights 0 sits in the relative interior, which also
# keeps the coordinate iterates bounded.

# In[2]:

ok, cert = contains_origin_rint_conv(f1.A)
print(ok, cert.lam)


# The minimum itself comes from the dual LP. The multipliers of the
# balance rows give a minimizer.

# In[3]:

res = solve_min_lp(f1)
print(res.status, res.value, res.x, res.lam)
print(is_global_minimizer(f1, (5, 5, 5)), is_global_minimizer(f1, (2, 1, 0)))
print(solve_min_lp(f4).status)
