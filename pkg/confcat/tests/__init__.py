# Import test modules for discovery
from .test_boxtensor import *  # noqa: F403
from .test_commands import *  # noqa: F403
from .test_configcat import *  # noqa: F403
from .test_conservatize import *  # noqa: F403
from .test_fincat import *  # noqa: F403
from .test_finset import *  # noqa: F403
from .test_homotopy import *  # noqa: F403
from .test_models import *  # noqa: F403
from .test_mutations import *  # noqa: F403
from .test_services import *  # noqa: F403
from .test_sspace import *  # noqa: F403
