import random

import pytest

from vnh.perms import Perm, Subgroup


@pytest.fixture
def rng():
    return random.Random(20260808)


def group_v2_id():
    return 2, Subgroup.trivial(2)


def group_v2_z2():
    return 2, Subgroup.symmetric(2)


def group_v3_s3():
    return 3, Subgroup.symmetric(3)


TEST_GROUPS = {
    "V2(Id)": group_v2_id,
    "V2(Z2)": group_v2_z2,
    "V3(S3)": group_v3_s3,
}


@pytest.fixture(params=sorted(TEST_GROUPS))
def group(request):
    return TEST_GROUPS[request.param]()


def swap2():
    return Perm((2, 1))
