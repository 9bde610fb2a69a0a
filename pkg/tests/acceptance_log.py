RESULTS: list[str] = []


def record(number: int, title: str, passed: bool, detail: str) -> None:
    RESULTS.append(f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {title}: {detail}")
    print(RESULTS[-1])
