"""SuperCBT grows and shrinks with the key count, and sorts in place.

Run: python3 demos/supercbt_shrink_grow_sort.py
"""

from cbtpq import SuperTournament, find_parent_and_sister, sort_in_place

# Parent and sister of every key for 12 keys (max index 11).
for i in range(12):
    parent, sister = find_parent_and_sister(i, 11)
    print(f"key {i:2}: parent node {parent:2}, sister {sister}")

t = SuperTournament([0.5, 0.2, 0.9, 0.4], ids=["a", "b", "c", "d"], capacity=8)
print("winner:", t.ids[t.peek_min()[0]])

new = t.insert(0.1, "e")
print(f"inserted 'e' at index {new}; winner now", t.ids[t.peek_min()[0]])

print("remove_min ->", t.remove_min())
print("remove_min ->", t.remove_min())
print("left:", len(t), "keys, node slots allocated:", t.storage_slots())

# In-place sort: the priority list itself ends up in non-increasing order.
prios = [3.2, 1.5, 4.8, 0.7, 2.9]
ids = sort_in_place(prios, ["p", "q", "r", "s", "t"])
print("sorted:", list(zip(ids, prios)))
