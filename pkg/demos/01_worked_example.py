"""
A complete worked example on a three-file project
==================================================

A tiny product with three files and two post-release defects: one defect
lives in a single file, the other spans two files.  We classify a prediction,
price it under the cost model, and derive the range of defect-cost ratios for
which the prediction actually saves money.
"""

from defectcost import (
    CostParams,
    KIND_BY_CODE,
    boundary_interval,
    classify,
    cost_init,
    cost_random,
    lower_boundary,
    parse_matrix,
    parse_prediction,
    project_view,
    summarize,
    theorem_boundary,
    upper_boundary,
)

# The defect matrix: rows are files with their size, columns are defects,
# cells say whether the file was involved in the defect.
matrix_text = """\
file,loc,d1,d2
s1,100,1,1
s2,50,0,1
s3,10,0,0
"""
project = parse_matrix(matrix_text, project_id="toy")
print("project:", summarize(project))

# A prediction that flags only s1.  d1 is fully covered, but d2 also touches
# s2, so d2 slips through even though s1 gets extra quality assurance.
prediction = parse_prediction("file,label\ns1,1\ns2,0\ns3,0\n", project)
outcome = classify(project, prediction)
print("confusion matrix:", outcome.cm)
print("defects caught:", sorted(outcome.predicted_defects))
print("defects missed:", sorted(outcome.missed_defects))

# Price the prediction with constant QA costs and a defect that costs 10
# QA units.  The model spends 1 unit on s1 and still pays for d2.
params = CostParams(c_ratio=10.0)
kind = KIND_BY_CODE["const-n-m"]
cost = cost_init(project, outcome, params, kind)
print(f"\nmodel cost at C=10: {cost:g}")
print(f"no QA at all would cost:   {cost_random(project, 0.0, params):g}")
print(f"QA on everything would cost: {cost_random(project, 1.0, params):g}")

# The same comparison without fixing C: the boundaries say the model beats
# doing nothing once a defect costs more than 1 QA unit, and beats blanket
# QA as long as a defect costs less than 2 QA units.
interval = boundary_interval(project, outcome, CostParams(), kind)
print(f"\ncost-saving interval: ({interval.lower:g}, {interval.upper:g})")
print("cost saving possible:", interval.cost_saving_possible)

# The corollary boundaries are the p_qa = 0 and p_qa = 1 endpoints of the
# general comparison against random quality assurance.
print("lower boundary:", lower_boundary(project, outcome, CostParams()))
print("upper boundary:", upper_boundary(project, outcome, CostParams()))
condition = theorem_boundary(project, outcome, 0.5, CostParams())
print(
    f"vs 50% random QA: kind={condition.kind.value}, threshold={condition.threshold:g} "
    f"(negative lower threshold: profitable at every positive C)"
)

# Imperfect quality assurance: with a 50% chance of missing a defect in each
# file, the two-file defect d2 escapes QA with probability 0.75, so saving
# cost needs pricier defects, and the 1-m view underestimates that.
print("\nwith p_qf = 0.5:")
half = CostParams(p_qf=0.5)
print("  n-m upper boundary:", upper_boundary(project, outcome, half))
view_1m = project_view(project, KIND_BY_CODE["const-1-m"].relationship)
outcome_1m = classify(view_1m, prediction)
print("  1-m upper boundary:", upper_boundary(view_1m, outcome_1m, half))
