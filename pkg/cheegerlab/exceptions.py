import json
from collections import defaultdict

from cheegerlab import utils


class CheegerLabError(Exception):
    pass


class ValidationError(CheegerLabError):
    def __init__(self, messages, labels=None):
        self.messages = messages
        self.labels = labels
        error_msg = defaultdict(dict)
        for error_type, msgs in self.messages.items():
            for setting, msg in msgs.items():
                error_msg[error_type][setting] = utils.ravel(msg)
        super().__init__(json.dumps(error_msg, indent=4))


class MessagesError(CheegerLabError):
    """
    Error carrying every problem found in a document, one message per
    problem, so a bad input file is reported in one pass.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("\n".join(self.messages))


class GraphFormatError(MessagesError):
    pass


class GroupTableError(MessagesError):
    pass


class GeneratingSetError(MessagesError):
    pass


class FamilyError(CheegerLabError):
    pass


class SpectrumError(CheegerLabError):
    pass


class ConvergenceError(SpectrumError):
    pass


class EnumerationLimitError(CheegerLabError):
    pass


class HypothesisError(CheegerLabError):
    pass


class ConsistencyError(CheegerLabError):
    pass


class CorpusError(CheegerLabError):
    pass


collision_list = ["adjust", "dump", "items", "keys", "to_dict", "defaults"]


class SettingNameCollisionException(CheegerLabError):
    pass
