import java.util.ArrayList;
import java.util.List;

public class Util {

    public static <T> void addElementToList(List<T> list, T element) {
        list.add(element);
    }

    public static String toString(List<String> list) {
        if (list == null || list.isEmpty()) { return ""; }
        StringBuilder builder = new StringBuilder();
        for (String s : list) {
            builder.append(s);
        }
        return builder.toString();
    }
}
