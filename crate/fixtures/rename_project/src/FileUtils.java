package run.halo.app.utils;

import java.nio.file.Path;

public class FileUtils {

    // Rejects paths escaping parentPath.
    public static void checkDirectoryTraversal(Path parentPath, Path pathToCheck) {
        Assert.notNull(parentPath, "Parent path must not be null");
        Assert.notNull(pathToCheck, "Path to check must not be null");
        if (pathToCheck.normalize().startsWith(parentPath)) {
            return;
        }
        throw new ForbiddenException("Directory traversal detected: " + pathToCheck.toString());
    }

    public static boolean isInside(String parentPath, String child) {
        PathChecker checker = new PathChecker(parentPath);
        return checker.contains(child);
    }
}
