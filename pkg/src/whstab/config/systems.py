"""Built-in plant/controller pairs.

Matrices are already sampled. Controllers are written for the regulator
error e = -y, so the closed-loop blocks carry the usual -B_c C_p signs.
"""

# Process-industry plant, PI controller, period 0.5 s
P1 = {
    "A": [[0.606, 0.304, 0.076],
          [0.0, 0.606, 0.304],
          [0.0, 0.0, 0.606]],
    "B": [[0.014], [0.091], [0.394]],
    "C": [[1.0, 0.0, 0.0]],
    "D": [[0.0]],
    "period_s": 0.5,
}

C1 = {
    "A": [[1.0]],
    "B": [[0.359]],
    "C": [[0.454]],
    "D": [[0.633]],
}

# Unstable ballistic plant, LQR controller, period 0.01 s
P2 = {
    "A": [[0.999, 0.012, -5.5e-4],
          [0.020, 1.0, -5.5e-6],
          [5.0e-5, 0.005, 1.0]],
    "B": [[0.020], [2.0e-4], [3.3e-7]],
    "C": [[1.0, 0.0, 0.0],
          [0.0, 1.0, 0.0],
          [0.0, 0.0, 1.0]],
    "D": [[0.0], [0.0], [0.0]],
    "period_s": 0.01,
}

# u_{t+1} = -K x_t - 0.322 u_t with a one-state delay: z mirrors the last
# computed command, so z_{t+1} = u_{t+1} whenever the job completes.
_K = [3.380, 3.417, 1.846]
C2 = {
    "A": [[-0.322]],
    "B": [list(_K)],
    "C": [[-0.322]],
    "D": [list(_K)],
}

BUILTIN_SYSTEMS = {
    "p1c1": (P1, C1),
    "p2c2": (P2, C2),
}
