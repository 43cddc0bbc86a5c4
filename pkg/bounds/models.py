from collections import namedtuple

from numerics.logspace import exp_or_inf


__all__ = ('Bound', 'ChainStep', 'CGWConstants')


class Bound(namedtuple('Bound', 'name log_value value')):
    """
    A closed-form bound; `value` is inf when exp(log_value) overflows.
    """
    __slots__ = ()

    @classmethod
    def from_log(cls, name, log_value):
        return cls(name, float(log_value), exp_or_inf(log_value))


ChainStep = namedtuple('ChainStep', 'chain label log_value')


class CGWConstants(object):
    """
    Constants of the Lyapunov-function route to an LSI for a smoothed
    measure on R^n. `steps` holds every relaxation in order, grouped by
    chain; within a chain each value must not be below the previous one.
    """
    D_CONST_NAME = 'D_const'

    def __init__(self, R, delta, n, **values):
        self.R = R
        self.delta = delta
        self.n = n
        self.steps = values.pop('steps')
        for k, v in values.items():
            setattr(self, k, v)

    def __repr__(self):
        return 'CGWConstants(R={}, delta={}, n={})'.format(self.R, self.delta, self.n)

    def chain(self, name):
        return [step for step in self.steps if step.chain == name]

    def violations(self, tol=1e-9):
        out = []
        chains = []
        for step in self.steps:
            if step.chain not in chains:
                chains.append(step.chain)
        for name in chains:
            steps = self.chain(name)
            for prev, step in zip(steps, steps[1:]):
                if step.log_value < prev.log_value - tol * max(1.0, abs(prev.log_value)):
                    out.append((prev, step))
        return out

    @property
    def monotone(self):
        return not self.violations()

    @property
    def lsi_bound_chain(self):
        return exp_or_inf(self.log_lsi_bound_chain)

    @property
    def lsi_bound_final(self):
        return exp_or_inf(self.log_lsi_bound_final)

    def to_dict(self):
        data = {k: v for k, v in self.__dict__.items() if k != 'steps'}
        data['lambda'] = data.pop('lam')
        data['lsi_bound_chain'] = self.lsi_bound_chain
        data['lsi_bound_final'] = self.lsi_bound_final
        data['steps'] = [step._asdict() for step in self.steps]
        data['violations'] = [
            {'chain': step.chain, 'from': prev.label, 'to': step.label,
             'from_log_value': prev.log_value, 'to_log_value': step.log_value}
            for prev, step in self.violations()
        ]
        data['monotone'] = not data['violations']
        return data
