# # Sign vectors and their consistency closure
#
# A set of sign vectors is consistent when every coordinate is either zero
# everywhere or takes both signs somewhere. The closure keeps the largest
# consistent subset, found by repeatedly dropping vectors that break a
# coordinate.

# In[1]:

from pwamin.signs import consistency_closure, enforce_consistency, is_consistent, sign_condition_holds

S = {(0, 1, -1), (1, -1, 0)}
print(is_consistent(S))


# Enforcement scans coordinates cyclically and records what it removes.

# In[2]:

closure, removals = enforce_consistency(S)
for j, dropped in removals:
    print(f"coordinate {j + 1}: removed {sorted(dropped)}")
print("closure:", set(closure))


# Adding a vector that balances the first coordinate rescues everything.

# In[3]:

T = S | {(-1, 0, 1)}
print(sorted(consistency_closure(T)))


# The sign condition on real vectors asks whether their signs contain a
# nonempty consistent subset. It is necessary for 0 to lie in the convex hull.

# In[4]:

print(sign_condition_holds([(1, -2), (-2, 1)]))   # True, yet 0 is not in the hull
print(sign_condition_holds([(0, 1, -1), (1, -1, 0)]))
